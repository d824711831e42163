//! The block upper triangular algebra, its canonical basis, idempotent
//! splits, bimodules and corner compression.

mod bimodule;
mod corner;
mod element;
mod partition;

pub use bimodule::{
    check_bimodule_axioms, corner_scalar_bimodule, direct_sum, natural_bimodule,
    regular_bimodule, AxiomFailure, AxiomName, AxiomReport, Bimodule,
};
pub use corner::{compress_corner, CornerCompression};
pub use element::{idempotents, pq_split, AlgebraElement};
pub use partition::{canonical_basis, diagonal_basis, AlgebraBasis, BlockPartition};
