//! Fraction-free elimination, reduced row echelon form, nullspaces and
//! exact span solves.
//!
//! One engine backs every public entry point: rows are reduced
//! incrementally against the pivot rows collected so far using cross
//! multiplication (`pivot_value * row - row_value * pivot_row`), with the
//! scalar's row-normalization hook stripping content after every update, so
//! rational input never leaves integer territory until the final
//! back-substitution scales each pivot to one. Pivots are always the
//! leftmost nonzero column, first row; no pivoting heuristic is randomized,
//! and since the reduced row echelon form of a matrix is unique, every
//! result here is canonical.

use std::collections::BTreeMap;

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::Error;

/// Outcome of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrefResult<S: Scalar> {
    /// Row-equivalent matrix in reduced row echelon form, zero rows last.
    pub reduced: Matrix<S>,
    /// Strictly increasing pivot column indices.
    pub pivot_columns: Vec<usize>,
    /// Number of pivots.
    pub rank: usize,
}

/// Sparse row: strictly increasing column indices, nonzero values.
pub type SparseRow<S> = Vec<(usize, S)>;

/// Row-major sparse matrix builder for the large, very sparse constraint
/// systems. The elimination contract is identical to the dense path.
#[derive(Clone, Debug)]
pub struct SparseMatrix<S: Scalar> {
    cols: usize,
    rows: Vec<SparseRow<S>>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn new(cols: usize) -> Self {
        SparseMatrix { cols, rows: Vec::new() }
    }

    /// Append a row given as arbitrary `(col, value)` terms; duplicate
    /// columns are summed and zero results dropped.
    pub fn push_row(&mut self, terms: impl IntoIterator<Item = (usize, S)>) {
        let mut acc: BTreeMap<usize, S> = BTreeMap::new();
        for (c, v) in terms {
            assert!(c < self.cols, "column {c} out of range");
            if v.is_zero() {
                continue;
            }
            match acc.remove(&c) {
                Some(old) => {
                    let sum = old.add(&v);
                    if !sum.is_zero() {
                        acc.insert(c, sum);
                    }
                }
                None => {
                    acc.insert(c, v);
                }
            }
        }
        self.rows.push(acc.into_iter().collect());
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Total number of stored nonzero entries.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Matrix<S> {
        let mut m = Matrix::zeros(self.rows.len(), self.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                m.set(r, *c, v.clone());
            }
        }
        m
    }

    /// Canonical nullspace basis; see [`nullspace`] for the convention.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let mut elim = Eliminator::new(self.cols);
        for row in &self.rows {
            elim.insert(row.clone());
        }
        elim.nullspace()
    }

    pub fn rank(&self) -> usize {
        let mut elim = Eliminator::new(self.cols);
        for row in &self.rows {
            elim.insert(row.clone());
        }
        elim.rank()
    }
}

/// Incrementally maintained pivot rows, kept mutually reduced (scaled
/// reduced row echelon shape) at all times.
pub(crate) struct Eliminator<S: Scalar> {
    cols: usize,
    /// pivot column -> row. Invariants: a row is zero at every other pivot
    /// column and at every column left of its own pivot.
    pivots: BTreeMap<usize, SparseRow<S>>,
}

impl<S: Scalar> Eliminator<S> {
    pub(crate) fn new(cols: usize) -> Self {
        Eliminator { cols, pivots: BTreeMap::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub(crate) fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Reduce `row` against the current pivots and, if anything survives,
    /// adopt its leftmost nonzero column as a new pivot. Returns true when
    /// the rank grew.
    pub(crate) fn insert(&mut self, mut row: SparseRow<S>) -> bool {
        normalize(&mut row);
        loop {
            let hit = row
                .iter()
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((c, coeff)) = hit else { break };
            let pivot_row = &self.pivots[&c];
            let pivot_val = pivot_value(pivot_row, c);
            row = axpy(&pivot_val, &row, &coeff.neg(), pivot_row);
            normalize(&mut row);
        }
        let Some((new_col, new_val)) = row.first().cloned() else {
            return false;
        };
        // Only rows with a pivot left of the new column can mention it;
        // clear those entries to keep the reduced shape.
        let to_fix: Vec<usize> = self
            .pivots
            .range(..new_col)
            .filter(|(_, r)| lookup(r, new_col).is_some())
            .map(|(c, _)| *c)
            .collect();
        for c in to_fix {
            let old = self.pivots.remove(&c).expect("pivot row present");
            let coeff = lookup(&old, new_col).expect("entry present").clone();
            let mut fixed = axpy(&new_val, &old, &coeff.neg(), &row);
            normalize(&mut fixed);
            debug_assert_eq!(fixed.first().map(|(c0, _)| *c0), Some(c));
            self.pivots.insert(c, fixed);
        }
        self.pivots.insert(new_col, row);
        true
    }

    /// Pivot rows in reduced row echelon form: pivots scaled to one, sorted
    /// by pivot column. This is the exact back-substitution step; it is the
    /// only place the rational path divides.
    pub(crate) fn rref_rows(&self) -> Vec<SparseRow<S>> {
        self.pivots
            .iter()
            .map(|(c, row)| {
                let pv = pivot_value(row, *c);
                row.iter().map(|(j, v)| (*j, v.div(&pv))).collect()
            })
            .collect()
    }

    /// Canonical nullspace basis: one vector per non-pivot column `f`, with
    /// entry one at `f`, in increasing order of `f`.
    pub(crate) fn nullspace(&self) -> Vec<Vec<S>> {
        let reduced = self.rref_rows();
        let pivot_cols = self.pivot_columns();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - pivot_cols.len());
        for f in (0..self.cols).filter(|&f| !is_pivot[f]) {
            let mut v = vec![S::zero(); self.cols];
            v[f] = S::one();
            for (&c, row) in pivot_cols.iter().zip(&reduced) {
                if let Some(val) = lookup(row, f) {
                    v[c] = val.neg();
                }
            }
            basis.push(v);
        }
        basis
    }
}

fn lookup<S: Scalar>(row: &SparseRow<S>, col: usize) -> Option<&S> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|i| &row[i].1)
}

fn pivot_value<S: Scalar>(row: &SparseRow<S>, col: usize) -> S {
    lookup(row, col).expect("pivot entry present").clone()
}

/// `a * x + b * y` over sorted sparse rows, dropping cancelled entries.
fn axpy<S: Scalar>(a: &S, x: &SparseRow<S>, b: &S, y: &SparseRow<S>) -> SparseRow<S> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let next = match (x.get(i), y.get(j)) {
            (Some((cx, vx)), Some((cy, _))) if cx < cy => {
                i += 1;
                (*cx, a.mul(vx))
            }
            (Some((cx, _)), Some((cy, vy))) if cy < cx => {
                j += 1;
                (*cy, b.mul(vy))
            }
            (Some((cx, vx)), Some((_, vy))) => {
                i += 1;
                j += 1;
                (*cx, a.mul(vx).add(&b.mul(vy)))
            }
            (Some((cx, vx)), None) => {
                i += 1;
                (*cx, a.mul(vx))
            }
            (None, Some((cy, vy))) => {
                j += 1;
                (*cy, b.mul(vy))
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

/// Apply the scalar's row-normalization hook to a sparse row.
fn normalize<S: Scalar>(row: &mut SparseRow<S>) {
    if row.is_empty() {
        return;
    }
    let mut values: Vec<S> = row.iter().map(|(_, v)| v.clone()).collect();
    S::normalize_row(&mut values);
    for ((_, slot), v) in row.iter_mut().zip(values) {
        *slot = v;
    }
    row.retain(|(_, v)| !v.is_zero());
}

/// Reduced row echelon form of a dense matrix.
pub fn rref<S: Scalar>(a: &Matrix<S>) -> RrefResult<S> {
    let mut elim = Eliminator::new(a.cols());
    for r in 0..a.rows() {
        elim.insert(a.row_nonzeros(r).map(|(c, v)| (c, v.clone())).collect());
    }
    let pivot_columns = elim.pivot_columns();
    let rank = pivot_columns.len();
    let mut reduced = Matrix::zeros(a.rows(), a.cols());
    for (r, row) in elim.rref_rows().into_iter().enumerate() {
        for (c, v) in row {
            reduced.set(r, c, v);
        }
    }
    RrefResult { reduced, pivot_columns, rank }
}

/// Canonical basis of `{ v : a * v = 0 }`: one vector per non-pivot column,
/// with entry one at that column, ordered by column.
pub fn nullspace<S: Scalar>(a: &Matrix<S>) -> Vec<Vec<S>> {
    let mut elim = Eliminator::new(a.cols());
    for r in 0..a.rows() {
        elim.insert(a.row_nonzeros(r).map(|(c, v)| (c, v.clone())).collect());
    }
    elim.nullspace()
}

/// Rank of a set of dense row vectors.
pub fn rank_of_rows<S: Scalar>(rows: impl IntoIterator<Item = Vec<S>>) -> usize {
    let mut elim: Option<Eliminator<S>> = None;
    for row in rows {
        let e = elim.get_or_insert_with(|| Eliminator::new(row.len()));
        let sparse: SparseRow<S> = row
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .collect();
        e.insert(sparse);
    }
    elim.map_or(0, |e| e.rank())
}

/// If `target` lies in the span of `basis`, return its unique coordinates
/// (unique when the basis is linearly independent; free coordinates are set
/// to zero otherwise). Returns `None` when the target is outside the span.
pub fn solve_in_span<S: Scalar>(
    basis: &[Vec<S>],
    target: &[S],
) -> crate::Result<Option<Vec<S>>> {
    for v in basis {
        if v.len() != target.len() {
            return Err(Error::DimensionMismatch {
                expected: target.len(),
                found: v.len(),
                what: "span basis vector length",
            });
        }
    }
    let d = basis.len();
    // Eliminate the augmented system [basis columns | target].
    let mut elim = Eliminator::new(d + 1);
    for r in 0..target.len() {
        let mut row: SparseRow<S> = Vec::new();
        for (c, b) in basis.iter().enumerate() {
            if !b[r].is_zero() {
                row.push((c, b[r].clone()));
            }
        }
        if !target[r].is_zero() {
            row.push((d, target[r].clone()));
        }
        elim.insert(row);
    }
    if elim.pivots.contains_key(&d) {
        return Ok(None); // inconsistent: target is independent of the basis
    }
    let mut coords = vec![S::zero(); d];
    for (&c, row) in elim.pivots.iter() {
        if let Some(v) = lookup(row, d) {
            coords[c] = v.div(&pivot_value(row, c));
        }
    }
    Ok(Some(coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Fp, Rational};

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn mat(rows: Vec<Vec<i64>>) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(q).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rref_identity_is_identity() {
        let r = rref(&Matrix::<Rational>::identity(2));
        assert_eq!(r.reduced, Matrix::identity(2));
        assert_eq!(r.pivot_columns, vec![0, 1]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_zero_matrix() {
        let r = rref(&Matrix::<Rational>::zeros(2, 2));
        assert_eq!(r.reduced, Matrix::zeros(2, 2));
        assert!(r.pivot_columns.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_rank_one_example() {
        // Hand row-reduction: [[2,4],[1,2]] -> R2 - (1/2)R1 kills row 2,
        // scale row 1 by 1/2.
        let r = rref(&mat(vec![vec![2, 4], vec![1, 2]]));
        assert_eq!(r.reduced, mat(vec![vec![1, 2], vec![0, 0]]));
        assert_eq!(r.pivot_columns, vec![0]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn nullspace_full_rank_is_empty() {
        assert!(nullspace(&Matrix::<Rational>::identity(3)).is_empty());
    }

    #[test]
    fn nullspace_of_zero_map_is_standard_basis() {
        let basis = nullspace(&Matrix::<Rational>::zeros(2, 3));
        assert_eq!(basis.len(), 3);
        for (i, v) in basis.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x, if i == j { q(1) } else { q(0) });
            }
        }
    }

    #[test]
    fn nullspace_single_row() {
        // a v = 0 for a = [1,1,0]: basis {(-1,1,0),(0,0,1)}, checked by
        // substitution below and frozen here.
        let a = mat(vec![vec![1, 1, 0]]);
        let basis = nullspace(&a);
        assert_eq!(
            basis,
            vec![vec![q(-1), q(1), q(0)], vec![q(0), q(0), q(1)]]
        );
        for v in &basis {
            assert!(a.matvec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_in_span_examples() {
        let e1 = vec![q(1), q(0)];
        let e2 = vec![q(0), q(1)];
        assert_eq!(
            solve_in_span(&[e1.clone(), e2.clone()], &[q(1), q(2)]).unwrap(),
            Some(vec![q(1), q(2)])
        );
        assert_eq!(solve_in_span(&[e1], &[q(0), q(1)]).unwrap(), None);
        // 2x2 solve by hand: x*(1,1) + y*(1,-1) = (3,1) => x=2, y=1.
        assert_eq!(
            solve_in_span(
                &[vec![q(1), q(1)], vec![q(1), q(-1)]],
                &[q(3), q(1)]
            )
            .unwrap(),
            Some(vec![q(2), q(1)])
        );
    }

    #[test]
    fn solve_in_span_dimension_mismatch() {
        let err = solve_in_span(&[vec![q(1)]], &[q(1), q(2)]);
        assert!(err.is_err());
    }

    #[test]
    fn sparse_and_dense_agree() {
        let dense = mat(vec![
            vec![0, 2, 4, 0],
            vec![1, 0, -2, 3],
            vec![1, 2, 2, 3],
            vec![0, 0, 0, 0],
        ]);
        let mut sparse = SparseMatrix::new(4);
        for r in 0..dense.rows() {
            sparse.push_row(dense.row_nonzeros(r).map(|(c, v)| (c, v.clone())));
        }
        assert_eq!(sparse.nullspace(), nullspace(&dense));
        assert_eq!(sparse.rank(), rref(&dense).rank);
    }

    #[test]
    fn push_row_merges_duplicate_columns() {
        let mut m = SparseMatrix::new(3);
        m.push_row(vec![(1, q(2)), (1, q(-2)), (0, q(1))]);
        assert_eq!(m.nnz(), 1);
    }

    /// Plain Gauss-Jordan with rational division at every step; an
    /// independent oracle for the fraction-free engine.
    fn naive_rref(a: &Matrix<Rational>) -> Matrix<Rational> {
        let (rows, cols) = (a.rows(), a.cols());
        let mut m: Vec<Vec<Rational>> = (0..rows).map(|r| a.row(r).to_vec()).collect();
        let mut pivot_row = 0;
        for col in 0..cols {
            let Some(r) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(pivot_row, r);
            let pv = m[pivot_row][col].clone();
            for x in &mut m[pivot_row] {
                *x = x.div(&pv);
            }
            let pivot = m[pivot_row].clone();
            for (r2, row) in m.iter_mut().enumerate() {
                if r2 != pivot_row && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, p) in row.iter_mut().zip(&pivot) {
                        *x = x.sub(&f.mul(p));
                    }
                }
            }
            pivot_row += 1;
            if pivot_row == rows {
                break;
            }
        }
        Matrix::from_rows(m).unwrap()
    }

    #[test]
    fn fraction_free_matches_naive_gauss_jordan() {
        use crate::rng::SplitMix64;
        let mut rng = SplitMix64::new(99);
        for _ in 0..200 {
            let rows = 1 + (rng.next_below(4) as usize);
            let cols = 1 + (rng.next_below(4) as usize);
            let m = Matrix::from_fn(rows, cols, |_, _| {
                Rational::from_i64(rng.next_coefficient())
            });
            assert_eq!(rref(&m).reduced, naive_rref(&m), "matrix {m:?}");
        }
    }

    #[test]
    fn exhaustive_small_field_cross_check() {
        // Every 2x3 matrix over F_3: the generic engine must agree with the
        // naive oracle on rank/nullity and produce exact kernels.
        type F3 = Fp<3>;
        let entries = 6;
        for code in 0..3u64.pow(entries) {
            let mut c = code;
            let m = Matrix::from_fn(2, 3, |_, _| {
                let v = F3::new(c % 3);
                c /= 3;
                v
            });
            let r = rref(&m);
            let ns = nullspace(&m);
            assert_eq!(r.rank + ns.len(), 3);
            for v in &ns {
                assert!(m.matvec(v).iter().all(|x| x.is_zero()));
            }
            // Idempotence of reduction.
            assert_eq!(rref(&r.reduced).reduced, r.reduced);
        }
    }
}
