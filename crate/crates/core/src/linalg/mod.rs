//! Exact linear algebra: scalars, dense and sparse matrices, elimination.

mod elim;
mod matrix;
mod scalar;

pub use elim::{
    nullspace, rank_of_rows, rref, solve_in_span, RrefResult, SparseMatrix, SparseRow,
};
pub use matrix::Matrix;
pub use scalar::{Fp, Rational, Scalar};
