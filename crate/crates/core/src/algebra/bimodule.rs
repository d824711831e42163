//! Finite-dimensional unital bimodules over the block algebra, given by
//! explicit action matrices per basis element.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::linalg::{Matrix, Rational, Scalar};

use super::element::AlgebraElement;
use super::partition::{canonical_basis, AlgebraBasis, BlockPartition};

/// A bimodule `M` over `T(partition)`: module dimension `m` plus one
/// `m x m` left-action and one right-action matrix per algebra basis
/// element, in canonical basis order. Actions of arbitrary elements are
/// assembled by linearity.
///
/// Construction only checks shapes; the four bimodule axioms are verified
/// by [`check_bimodule_axioms`], which the custom-bimodule loader calls.
#[derive(Clone)]
pub struct Bimodule {
    partition: BlockPartition,
    basis: AlgebraBasis,
    dim: usize,
    left: Vec<Matrix<Rational>>,
    right: Vec<Matrix<Rational>>,
    label: String,
}

impl Bimodule {
    pub fn from_actions(
        partition: BlockPartition,
        dim: usize,
        left: Vec<Matrix<Rational>>,
        right: Vec<Matrix<Rational>>,
        label: impl Into<String>,
    ) -> crate::Result<Self> {
        let basis = canonical_basis(&partition);
        if left.len() != basis.len() || right.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: left.len().min(right.len()),
                what: "action matrix count",
            });
        }
        for m in left.iter().chain(right.iter()) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.rows().max(m.cols()),
                    what: "action matrix size",
                });
            }
        }
        Ok(Bimodule { partition, basis, dim, left, right, label: label.into() })
    }

    pub fn partition(&self) -> &BlockPartition {
        &self.partition
    }

    pub fn basis(&self) -> &AlgebraBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn left(&self, idx: usize) -> &Matrix<Rational> {
        &self.left[idx]
    }

    pub fn right(&self, idx: usize) -> &Matrix<Rational> {
        &self.right[idx]
    }

    /// Left action of an arbitrary element, assembled by linearity.
    pub fn act_left(&self, x: &AlgebraElement) -> crate::Result<Matrix<Rational>> {
        self.assemble(x, &self.left)
    }

    /// Right action of an arbitrary element.
    pub fn act_right(&self, x: &AlgebraElement) -> crate::Result<Matrix<Rational>> {
        self.assemble(x, &self.right)
    }

    /// `x . v` without materializing the assembled action matrix.
    pub fn act_left_vec(&self, x: &AlgebraElement, v: &[Rational]) -> crate::Result<Vec<Rational>> {
        self.apply_actions(x, v, &self.left)
    }

    /// `v . x` without materializing the assembled action matrix.
    pub fn act_right_vec(
        &self,
        x: &AlgebraElement,
        v: &[Rational],
    ) -> crate::Result<Vec<Rational>> {
        self.apply_actions(x, v, &self.right)
    }

    fn check_element(&self, x: &AlgebraElement) -> crate::Result<()> {
        if x.partition() != &self.partition {
            return Err(Error::PartitionMismatch);
        }
        Ok(())
    }

    fn assemble(
        &self,
        x: &AlgebraElement,
        actions: &[Matrix<Rational>],
    ) -> crate::Result<Matrix<Rational>> {
        self.check_element(x)?;
        let mut acc = Matrix::zeros(self.dim, self.dim);
        for (idx, &(i, j)) in self.basis.pairs().iter().enumerate() {
            let c = x.get(i, j);
            if !c.is_zero() {
                acc = acc.add(&actions[idx].scale(c));
            }
        }
        Ok(acc)
    }

    fn apply_actions(
        &self,
        x: &AlgebraElement,
        v: &[Rational],
        actions: &[Matrix<Rational>],
    ) -> crate::Result<Vec<Rational>> {
        self.check_element(x)?;
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
                what: "module vector length",
            });
        }
        let mut acc = vec![Rational::zero(); self.dim];
        for (idx, &(i, j)) in self.basis.pairs().iter().enumerate() {
            let c = x.get(i, j);
            if !c.is_zero() {
                let term = actions[idx].matvec(v);
                for (a, t) in acc.iter_mut().zip(term) {
                    *a = a.add(&t.mul(c));
                }
            }
        }
        Ok(acc)
    }
}

impl fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Bimodule {{ label: {:?}, partition: {}, dim: {} }}",
            self.label, self.partition, self.dim
        )
    }
}

/// The natural bimodule `M_n` over `T(partition)` with actions by matrix
/// multiplication. Coordinates: entry `(r, c)` of the module matrix sits at
/// position `r * n + c`.
pub fn natural_bimodule(p: &BlockPartition) -> Bimodule {
    let n = p.n();
    let dim = n * n;
    let basis = canonical_basis(p);
    let coord = |r: usize, c: usize| r * n + c;
    let mut left = Vec::with_capacity(basis.len());
    let mut right = Vec::with_capacity(basis.len());
    for &(i, j) in basis.pairs() {
        // E_ij * E_rc = [r = j] E_ic and E_rc * E_ij = [c = i] E_rj.
        let mut l = Matrix::zeros(dim, dim);
        let mut r = Matrix::zeros(dim, dim);
        for t in 0..n {
            l.set(coord(i, t), coord(j, t), Rational::one());
            r.set(coord(t, j), coord(t, i), Rational::one());
        }
        left.push(l);
        right.push(r);
    }
    Bimodule::from_actions(p.clone(), dim, left, right, "natural").expect("valid shape")
}

/// The regular bimodule: `T` acting on itself. Coordinates are the
/// canonical basis indices.
pub fn regular_bimodule(p: &BlockPartition) -> Bimodule {
    let basis = canonical_basis(p);
    let dim = basis.len();
    let mut left = Vec::with_capacity(dim);
    let mut right = Vec::with_capacity(dim);
    for &(a, b) in basis.pairs() {
        let mut l = Matrix::zeros(dim, dim);
        let mut r = Matrix::zeros(dim, dim);
        for (t, &(i, j)) in basis.pairs().iter().enumerate() {
            // E_ab * E_ij = [b = i] E_aj; the result is always admissible.
            if b == i {
                let out = basis.index_of(a, j).expect("closed under products");
                l.set(out, t, Rational::one());
            }
            // E_ij * E_ab = [j = a] E_ib.
            if j == a {
                let out = basis.index_of(i, b).expect("closed under products");
                r.set(out, t, Rational::one());
            }
        }
        left.push(l);
        right.push(r);
    }
    Bimodule::from_actions(p.clone(), dim, left, right, "regular").expect("valid shape")
}

/// The corner bimodule of `n_k x n_1` matrices: the last diagonal block of
/// `X` acts on the left, the first diagonal block on the right. Entry
/// `(r, c)` sits at position `r * n_1 + c`.
///
/// This is the smallest built-in module with a nonzero antiderivation
/// component; the two outer actions never interact, which is what frees
/// the off-diagonal corner from the derivation law.
pub fn corner_scalar_bimodule(p: &BlockPartition) -> crate::Result<Bimodule> {
    if p.k() < 2 {
        return Err(Error::NotSplittable);
    }
    let basis = canonical_basis(p);
    let n1 = p.parts()[0];
    let nk = *p.parts().last().expect("nonempty");
    let first = 0;
    let last = p.k() - 1;
    let last_start = p.block_start(last);
    let dim = nk * n1;
    let coord = |r: usize, c: usize| r * n1 + c;
    let mut left = Vec::with_capacity(basis.len());
    let mut right = Vec::with_capacity(basis.len());
    for &(i, j) in basis.pairs() {
        let mut l = Matrix::zeros(dim, dim);
        let mut r = Matrix::zeros(dim, dim);
        if p.block_of(i) == last && p.block_of(j) == last {
            // X_kk * v: block-local unit E_{i',j'} sends row j' to row i'.
            let (bi, bj) = (i - last_start, j - last_start);
            for c in 0..n1 {
                l.set(coord(bi, c), coord(bj, c), Rational::one());
            }
        }
        if p.block_of(i) == first && p.block_of(j) == first {
            // v * X_11: block-local unit E_{i,j} sends column i to column j.
            for t in 0..nk {
                r.set(coord(t, j), coord(t, i), Rational::one());
            }
        }
        left.push(l);
        right.push(r);
    }
    Bimodule::from_actions(p.clone(), dim, left, right, "corner_scalar")
}

/// Direct sum of two bimodules over the same partition, actions block
/// diagonal.
pub fn direct_sum(a: &Bimodule, b: &Bimodule) -> crate::Result<Bimodule> {
    if a.partition != b.partition {
        return Err(Error::PartitionMismatch);
    }
    let dim = a.dim + b.dim;
    let stack = |x: &Matrix<Rational>, y: &Matrix<Rational>| {
        let mut m = Matrix::zeros(dim, dim);
        for r in 0..x.rows() {
            for (c, v) in x.row_nonzeros(r) {
                m.set(r, c, v.clone());
            }
        }
        for r in 0..y.rows() {
            for (c, v) in y.row_nonzeros(r) {
                m.set(a.dim + r, a.dim + c, v.clone());
            }
        }
        m
    };
    let left = a.left.iter().zip(&b.left).map(|(x, y)| stack(x, y)).collect();
    let right = a.right.iter().zip(&b.right).map(|(x, y)| stack(x, y)).collect();
    let label = format!("direct_sum({},{})", a.label, b.label);
    Bimodule::from_actions(a.partition.clone(), dim, left, right, label)
}

/// The four axioms a bimodule must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomName {
    Unitality,
    LeftAssociativity,
    RightAssociativity,
    Compatibility,
}

impl fmt::Display for AxiomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AxiomName::Unitality => "unitality",
            AxiomName::LeftAssociativity => "left_associativity",
            AxiomName::RightAssociativity => "right_associativity",
            AxiomName::Compatibility => "compatibility",
        };
        f.write_str(s)
    }
}

/// One axiom violation; `pair` gives the basis-pair indices for the
/// pairwise axioms and is absent for unitality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: AxiomName,
    pub pair: Option<(usize, usize)>,
}

/// Outcome of [`check_bimodule_axioms`]: every violation, in a fixed order
/// (axiom by axiom, pairs ascending).
#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// First violation as an error, for loaders that must reject.
    pub fn into_result(self) -> crate::Result<()> {
        match self.violations.into_iter().next() {
            None => Ok(()),
            Some(f) => Err(Error::AxiomViolation { axiom: f.axiom.to_string(), pair: f.pair }),
        }
    }
}

/// Checks unitality, left/right associativity and left-right compatibility
/// over all ordered basis pairs. Pure report; nothing is rejected here.
pub fn check_bimodule_axioms(m: &Bimodule) -> AxiomReport {
    let mut violations = Vec::new();

    let identity = AlgebraElement::identity(m.partition.clone());
    let id = Matrix::identity(m.dim);
    if m.act_left(&identity).expect("same partition") != id
        || m.act_right(&identity).expect("same partition") != id
    {
        violations.push(AxiomFailure { axiom: AxiomName::Unitality, pair: None });
    }

    let len = m.basis.len();
    let pairs: Vec<(usize, usize)> = (0..len)
        .flat_map(|a| (0..len).map(move |b| (a, b)))
        .collect();

    let product_action = |a: usize, b: usize, actions: &[Matrix<Rational>]| {
        let (i, j) = m.basis.pair(a);
        let (k, l) = m.basis.pair(b);
        if j == k {
            let idx = m.basis.index_of(i, l).expect("closed under products");
            actions[idx].clone()
        } else {
            Matrix::zeros(m.dim, m.dim)
        }
    };

    let mut check_pairwise = |axiom: AxiomName, fails: Vec<&(usize, usize)>| {
        violations.extend(
            fails
                .into_iter()
                .map(|&pair| AxiomFailure { axiom, pair: Some(pair) }),
        );
    };

    let left_fails: Vec<&(usize, usize)> = pairs
        .par_iter()
        .filter(|&&(a, b)| product_action(a, b, &m.left) != m.left[a].matmul(&m.left[b]))
        .collect();
    check_pairwise(AxiomName::LeftAssociativity, left_fails);

    let right_fails: Vec<&(usize, usize)> = pairs
        .par_iter()
        .filter(|&&(a, b)| product_action(a, b, &m.right) != m.right[b].matmul(&m.right[a]))
        .collect();
    check_pairwise(AxiomName::RightAssociativity, right_fails);

    let compat_fails: Vec<&(usize, usize)> = pairs
        .par_iter()
        .filter(|&&(a, b)| {
            m.left[a].matmul(&m.right[b]) != m.right[b].matmul(&m.left[a])
        })
        .collect();
    check_pairwise(AxiomName::Compatibility, compat_fails);

    AxiomReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(parts: &[usize]) -> BlockPartition {
        BlockPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn natural_dimensions() {
        assert_eq!(natural_bimodule(&part(&[1, 1])).dim(), 4);
        assert_eq!(natural_bimodule(&part(&[2, 1])).dim(), 9);
    }

    #[test]
    fn regular_dimension_is_basis_count() {
        assert_eq!(regular_bimodule(&part(&[2, 1])).dim(), 7);
    }

    #[test]
    fn corner_scalar_minimal_case() {
        let m = corner_scalar_bimodule(&part(&[1, 1])).unwrap();
        assert_eq!(m.dim(), 1);
        // Left action: E00 acts as 0, E11 as 1. Right action: the reverse.
        assert!(m.left(0).is_zero());
        assert_eq!(*m.left(2).get(0, 0), Rational::one());
        assert_eq!(*m.right(0).get(0, 0), Rational::one());
        assert!(m.right(2).is_zero());
        // E01 acts as zero on both sides.
        assert!(m.left(1).is_zero());
        assert!(m.right(1).is_zero());
    }

    #[test]
    fn corner_scalar_requires_two_blocks() {
        assert!(matches!(
            corner_scalar_bimodule(&part(&[3])),
            Err(Error::NotSplittable)
        ));
    }

    #[test]
    fn builtin_bimodules_pass_axioms() {
        for parts in [&[1usize, 1][..], &[2, 1], &[1, 1, 1], &[2, 2]] {
            let p = part(parts);
            assert!(check_bimodule_axioms(&natural_bimodule(&p)).ok());
            assert!(check_bimodule_axioms(&regular_bimodule(&p)).ok());
            assert!(check_bimodule_axioms(&corner_scalar_bimodule(&p).unwrap()).ok());
        }
        assert!(check_bimodule_axioms(&natural_bimodule(&part(&[2]))).ok());
    }

    #[test]
    fn direct_sum_passes_axioms() {
        let p = part(&[1, 1]);
        let s = direct_sum(&natural_bimodule(&p), &corner_scalar_bimodule(&p).unwrap()).unwrap();
        assert_eq!(s.dim(), 5);
        assert!(check_bimodule_axioms(&s).ok());
    }

    #[test]
    fn swapped_actions_fail_associativity() {
        let p = part(&[1, 1]);
        let m = natural_bimodule(&p);
        let swapped = Bimodule::from_actions(
            p,
            m.dim(),
            m.right.clone(),
            m.left.clone(),
            "swapped",
        )
        .unwrap();
        let report = check_bimodule_axioms(&swapped);
        assert!(!report.ok());
        // Basis order is E00, E01, E11; the (E01, E11) pair must be among
        // the left-associativity violations.
        assert!(report.violations.iter().any(|f| {
            f.axiom == AxiomName::LeftAssociativity && f.pair == Some((1, 2))
        }));
        // Unitality and compatibility survive the swap.
        assert!(report
            .violations
            .iter()
            .all(|f| matches!(
                f.axiom,
                AxiomName::LeftAssociativity | AxiomName::RightAssociativity
            )));
    }

    #[test]
    fn assembled_actions_respect_products() {
        // act_left is multiplicative on a couple of non-unit elements.
        let p = part(&[2, 1]);
        let m = natural_bimodule(&p);
        let x = AlgebraElement::new(
            p.clone(),
            Matrix::from_rows(vec![
                vec![Rational::from_i64(2), Rational::from_i64(1), Rational::from_i64(-3)],
                vec![Rational::from_i64(0), Rational::from_i64(1), Rational::from_i64(5)],
                vec![Rational::from_i64(0), Rational::from_i64(0), Rational::from_i64(4)],
            ])
            .unwrap(),
        )
        .unwrap();
        let y = AlgebraElement::new(
            p.clone(),
            Matrix::from_rows(vec![
                vec![Rational::from_i64(1), Rational::from_i64(-1), Rational::from_i64(0)],
                vec![Rational::from_i64(7), Rational::from_i64(2), Rational::from_i64(1)],
                vec![Rational::from_i64(0), Rational::from_i64(0), Rational::from_i64(-2)],
            ])
            .unwrap(),
        )
        .unwrap();
        let xy = x.multiply(&y).unwrap();
        assert_eq!(
            m.act_left(&xy).unwrap(),
            m.act_left(&x).unwrap().matmul(&m.act_left(&y).unwrap())
        );
        assert_eq!(
            m.act_right(&xy).unwrap(),
            m.act_right(&y).unwrap().matmul(&m.act_right(&x).unwrap())
        );
    }
}
