//! Linear maps into a bimodule: predicates, constraint systems, space
//! bases, sampling, corner restriction and the projection oracle.

mod constraints;
mod corner_map;
mod kind;
mod linear_map;
mod oracle;
mod sample;

pub use constraints::{
    constraint_matrix, decomposition_spaces, dims_report, report_from_spaces, space_basis,
    DimsReport, SpaceBasis,
};
pub use corner_map::restrict_corner_map;
pub use kind::{check_kind, is_kind, vanishes_on_diagonal, KindWitness, MapKind};
pub use linear_map::{inner_derivation, LinearMap};
pub use oracle::{project_decompose_oracle, project_decompose_with_spaces, DecompositionPair};
pub use sample::{sample_coefficients, sample_map};
