//! Linearization of the derivation-type identities into sparse constraint
//! systems, and the nullspace-backed space bases.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{diagonal_basis, Bimodule};
use crate::linalg::{rank_of_rows, Rational, Scalar, SparseMatrix};

use super::kind::MapKind;
use super::linear_map::LinearMap;

/// The homogeneous system whose nullspace is exactly the space of maps of
/// the given kind.
///
/// Unknowns: coordinate `t` of the image of basis element `e` sits at
/// column `e * dim + t`. Rows come in blocks of `dim`, one block per
/// ordered basis pair in canonical (pair-major) order; the diagonal-
/// vanishing kind appends one block per diagonal basis element.
pub fn constraint_matrix(kind: MapKind, m: &Bimodule) -> SparseMatrix<Rational> {
    let basis = m.basis();
    let dim = m.dim();
    let cols = basis.len() * dim;
    let mut system = SparseMatrix::new(cols);
    let unknown = |e: usize, t: usize| e * dim + t;

    for (ai, &(i, j)) in basis.pairs().iter().enumerate() {
        for (bi, &(k, l)) in basis.pairs().iter().enumerate() {
            let ab = (j == k).then(|| basis.index_of(i, l).expect("closed"));
            let ba = (l == i).then(|| basis.index_of(k, j).expect("closed"));
            for r in 0..dim {
                let mut terms: Vec<(usize, Rational)> = Vec::new();
                let mut product = |idx: Option<usize>| {
                    if let Some(e) = idx {
                        terms.push((unknown(e, r), Rational::one()));
                    }
                };
                match kind {
                    MapKind::Derivation => {
                        // f(ab) - D(a)b - aD(b) = 0.
                        product(ab);
                    }
                    MapKind::Antiderivation | MapKind::AntiderivationDiag0 => {
                        // f(ab) - D(b)a - bD(a) = 0.
                        product(ab);
                    }
                    MapKind::Jordan => {
                        // f(ab) + f(ba) - D(a)b - aD(b) - D(b)a - bD(a) = 0.
                        product(ab);
                        product(ba);
                    }
                }
                let mut action = |mat_row: &Bimodule, row_of: usize, source: usize, left: bool| {
                    let mat = if left { mat_row.left(row_of) } else { mat_row.right(row_of) };
                    for (t, v) in mat.row_nonzeros(r) {
                        terms.push((unknown(source, t), v.neg()));
                    }
                };
                match kind {
                    MapKind::Derivation => {
                        action(m, bi, ai, false); // D(a)b
                        action(m, ai, bi, true); // aD(b)
                    }
                    MapKind::Antiderivation | MapKind::AntiderivationDiag0 => {
                        action(m, ai, bi, false); // D(b)a
                        action(m, bi, ai, true); // bD(a)
                    }
                    MapKind::Jordan => {
                        action(m, bi, ai, false);
                        action(m, ai, bi, true);
                        action(m, ai, bi, false);
                        action(m, bi, ai, true);
                    }
                }
                system.push_row(terms);
            }
        }
    }

    if kind == MapKind::AntiderivationDiag0 {
        for e in diagonal_basis(m.partition()) {
            for t in 0..dim {
                system.push_row([(unknown(e, t), Rational::one())]);
            }
        }
    }
    system
}

/// A deterministic basis of one of the derivation-type spaces.
#[derive(Clone, Debug)]
pub struct SpaceBasis {
    kind: MapKind,
    bimodule: Arc<Bimodule>,
    maps: Vec<LinearMap>,
}

impl SpaceBasis {
    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn bimodule(&self) -> &Arc<Bimodule> {
        &self.bimodule
    }

    pub fn maps(&self) -> &[LinearMap] {
        &self.maps
    }

    pub fn dim(&self) -> usize {
        self.maps.len()
    }
}

/// Computes the space of maps of the given kind as the nullspace of the
/// constraint system. The basis is canonical because the nullspace routine
/// is.
pub fn space_basis(kind: MapKind, m: &Arc<Bimodule>) -> SpaceBasis {
    let maps = constraint_matrix(kind, m)
        .nullspace()
        .into_iter()
        .map(|v| LinearMap::from_coordinates(Arc::clone(m), &v).expect("nullspace length"))
        .collect();
    SpaceBasis { kind, bimodule: Arc::clone(m), maps }
}

/// Space dimensions plus the direct-sum verdict.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DimsReport {
    pub jordan: usize,
    pub derivation: usize,
    pub antiderivation_diag0: usize,
    /// Whether `jordan = derivation + antiderivation_diag0` and the two
    /// bases are jointly independent, the dimension-level form of the
    /// decomposition theorem.
    pub direct_sum_ok: bool,
}

/// Computes the three relevant spaces and checks the direct-sum identity.
pub fn dims_report(m: &Arc<Bimodule>) -> DimsReport {
    let (jordan, der, anti0) = decomposition_spaces(m);
    report_from_spaces(&jordan, &der, &anti0)
}

/// The Jordan, derivation and diagonal-vanishing antiderivation spaces in
/// one sweep, for callers that need the bases as well as the dimensions.
pub fn decomposition_spaces(m: &Arc<Bimodule>) -> (SpaceBasis, SpaceBasis, SpaceBasis) {
    (
        space_basis(MapKind::Jordan, m),
        space_basis(MapKind::Derivation, m),
        space_basis(MapKind::AntiderivationDiag0, m),
    )
}

/// Builds the report from already-computed spaces; pairs with
/// [`decomposition_spaces`] when callers need both the report and the
/// bases.
pub fn report_from_spaces(
    jordan: &SpaceBasis,
    der: &SpaceBasis,
    anti0: &SpaceBasis,
) -> DimsReport {
    let concat = der
        .maps()
        .iter()
        .chain(anti0.maps())
        .map(LinearMap::coordinates);
    let independent = rank_of_rows(concat) == der.dim() + anti0.dim();
    DimsReport {
        jordan: jordan.dim(),
        derivation: der.dim(),
        antiderivation_diag0: anti0.dim(),
        direct_sum_ok: jordan.dim() == der.dim() + anti0.dim() && independent,
    }
}
