//! Elements of the block upper triangular algebra.

use std::fmt;

use crate::error::Error;
use crate::linalg::{Matrix, Rational, Scalar};

use super::partition::BlockPartition;

/// An element of `T(partition)`: an `n x n` matrix supported on the block
/// upper triangular pattern.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    partition: BlockPartition,
    entries: Matrix<Rational>,
}

impl AlgebraElement {
    /// Wraps a matrix, rejecting wrong shapes and any nonzero entry below
    /// the block diagonal.
    pub fn new(partition: BlockPartition, entries: Matrix<Rational>) -> crate::Result<Self> {
        let n = partition.n();
        if entries.rows() != n || entries.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: entries.rows().max(entries.cols()),
                what: "algebra element matrix size",
            });
        }
        for i in 0..n {
            for j in 0..n {
                if !partition.admissible(i, j) && !entries.get(i, j).is_zero() {
                    return Err(Error::SupportViolation { row: i, col: j });
                }
            }
        }
        Ok(AlgebraElement { partition, entries })
    }

    pub fn zero(partition: BlockPartition) -> Self {
        let n = partition.n();
        AlgebraElement { partition, entries: Matrix::zeros(n, n) }
    }

    pub fn identity(partition: BlockPartition) -> Self {
        let n = partition.n();
        AlgebraElement { partition, entries: Matrix::identity(n) }
    }

    /// The matrix unit `E_ij`; errors when `(i, j)` is outside the pattern.
    pub fn matrix_unit(partition: BlockPartition, i: usize, j: usize) -> crate::Result<Self> {
        if !partition.admissible(i, j) {
            return Err(Error::SupportViolation { row: i, col: j });
        }
        let n = partition.n();
        let mut entries = Matrix::zeros(n, n);
        entries.set(i, j, Rational::one());
        Ok(AlgebraElement { partition, entries })
    }

    pub fn partition(&self) -> &BlockPartition {
        &self.partition
    }

    pub fn entries(&self) -> &Matrix<Rational> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.entries.get(i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> crate::Result<Self> {
        if self.partition != rhs.partition {
            return Err(Error::PartitionMismatch);
        }
        Ok(AlgebraElement {
            partition: self.partition.clone(),
            entries: self.entries.add(&rhs.entries),
        })
    }

    pub fn sub(&self, rhs: &Self) -> crate::Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            partition: self.partition.clone(),
            entries: self.entries.neg(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        AlgebraElement {
            partition: self.partition.clone(),
            entries: self.entries.scale(k),
        }
    }

    /// Matrix product; the pattern is closed under it, which `new` re-checks.
    pub fn multiply(&self, rhs: &Self) -> crate::Result<Self> {
        if self.partition != rhs.partition {
            return Err(Error::PartitionMismatch);
        }
        AlgebraElement::new(self.partition.clone(), self.entries.matmul(&rhs.entries))
    }

    /// `[x, y] = xy - yx`.
    pub fn commutator(&self, rhs: &Self) -> crate::Result<Self> {
        self.multiply(rhs)?.sub(&rhs.multiply(self)?)
    }

    /// `xy + yx`.
    pub fn jordan_product(&self, rhs: &Self) -> crate::Result<Self> {
        self.multiply(rhs)?.add(&rhs.multiply(self)?)
    }

    /// Embeds an element of the tail algebra `T(n_2, ..., n_k)` into the
    /// lower-right corner of `T(parent)` by shifting indices up by `n_1`.
    /// This is the inverse of the corner isomorphism `QTQ -> T(tail)`.
    pub fn shift_from_tail(parent: &BlockPartition, x: &AlgebraElement) -> crate::Result<Self> {
        let tail = parent.tail()?;
        if x.partition != tail {
            return Err(Error::PartitionMismatch);
        }
        let offset = parent.parts()[0];
        let n = parent.n();
        let mut entries = Matrix::zeros(n, n);
        let m = x.partition.n();
        for i in 0..m {
            for j in 0..m {
                let v = x.get(i, j);
                if !v.is_zero() {
                    entries.set(i + offset, j + offset, v.clone());
                }
            }
        }
        Ok(AlgebraElement { partition: parent.clone(), entries })
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement{:?}", self.entries)
    }
}

/// The idempotents `F_1, ..., F_k`: each is the sum of the diagonal units
/// of one block.
pub fn idempotents(p: &BlockPartition) -> Vec<AlgebraElement> {
    (0..p.k())
        .map(|b| {
            let n = p.n();
            let mut entries = Matrix::zeros(n, n);
            let start = p.block_start(b);
            for i in start..start + p.parts()[b] {
                entries.set(i, i, Rational::one());
            }
            AlgebraElement { partition: p.clone(), entries }
        })
        .collect()
}

/// The split `P = F_1`, `Q = I - P` together with the tail partition of
/// the corner `QTQ`. Requires at least two blocks.
pub fn pq_split(
    p: &BlockPartition,
) -> crate::Result<(AlgebraElement, AlgebraElement, BlockPartition)> {
    let tail = p.tail()?;
    let f = idempotents(p);
    let pe = f[0].clone();
    let q = AlgebraElement::identity(p.clone()).sub(&pe)?;
    Ok((pe, q, tail))
}
