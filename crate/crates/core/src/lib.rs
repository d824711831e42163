//! Exact computation of derivation-type spaces on block upper triangular
//! matrix algebras.
//!
//! The crate models the algebra `T(n_1, ..., n_k)` of block upper triangular
//! `n x n` matrices over the rationals, finite-dimensional unital
//! `T`-bimodules given by explicit action matrices, and linear maps from `T`
//! into such a bimodule. On top of that it computes the spaces of
//! derivations, antiderivations and Jordan derivations as exact nullspaces,
//! and decomposes any Jordan derivation into a derivation plus an
//! antiderivation that vanishes on the block-diagonal subalgebra, both by a
//! recursive corner-peeling algorithm and by an independent linear-algebra
//! projection. All arithmetic is exact; there is no tolerance parameter
//! anywhere.
//!
//! Module layout:
//!
//! * [`linalg`] — exact scalars, dense matrices, fraction-free elimination,
//!   nullspaces and span solves.
//! * [`algebra`] — block partitions, the matrix-unit basis, algebra
//!   elements, idempotent splits, bimodules and corner compression.
//! * [`maps`] — linear maps `T -> M`, the derivation-type predicates,
//!   constraint assembly, space bases, sampling and the projection oracle.
//! * [`decompose`] — the recursive decomposition and its per-level
//!   diagnostics.
//! * [`formats`] — the JSON interchange schemas used by the CLI.

pub mod algebra;
pub mod decompose;
mod error;
pub mod formats;
pub mod linalg;
pub mod maps;
pub mod rng;

pub use error::{Error, Result};
pub use linalg::{Matrix, Rational, RrefResult};

pub use algebra::{
    canonical_basis, check_bimodule_axioms, compress_corner, diagonal_basis, idempotents,
    pq_split, AlgebraBasis, AlgebraElement, AxiomReport, Bimodule, BlockPartition,
    CornerCompression,
};
pub use decompose::{
    correction_element, decompose, verify_proof_steps, DecompositionTrace, StepCheckConfig,
    StepReport, TraceLevel,
};
pub use maps::{
    constraint_matrix, dims_report, inner_derivation, project_decompose_oracle, restrict_corner_map,
    sample_map, space_basis, DecompositionPair, DimsReport, KindWitness, LinearMap, MapKind,
    SpaceBasis,
};
