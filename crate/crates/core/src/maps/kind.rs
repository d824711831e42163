//! Classification predicates for linear maps.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::diagonal_basis;
use crate::error::Error;
use crate::linalg::{Rational, Scalar};

use super::linear_map::LinearMap;

/// The derivation-type identities a map can satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    /// `D(ab) = D(a)b + aD(b)`.
    Derivation,
    /// `D(ab) = D(b)a + bD(a)`.
    Antiderivation,
    /// Antiderivation that additionally vanishes on the block-diagonal
    /// subalgebra.
    AntiderivationDiag0,
    /// `D(ab + ba) = D(a)b + aD(b) + D(b)a + bD(a)`.
    Jordan,
}

impl MapKind {
    pub const ALL: [MapKind; 4] = [
        MapKind::Derivation,
        MapKind::Antiderivation,
        MapKind::AntiderivationDiag0,
        MapKind::Jordan,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MapKind::Derivation => "derivation",
            MapKind::Antiderivation => "antiderivation",
            MapKind::AntiderivationDiag0 => "antiderivation_diag0",
            MapKind::Jordan => "jordan",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MapKind {
    type Err = Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        MapKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown kind `{s}`")))
    }
}

/// Where a predicate first fails. Pairs name matrix units by their `(i, j)`
/// indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum KindWitness {
    /// The defining identity fails on the ordered pair `(E_a, E_b)`.
    Identity {
        kind: MapKind,
        a: (usize, usize),
        b: (usize, usize),
    },
    /// A nonzero image on a block-diagonal basis element.
    DiagonalValue { at: (usize, usize) },
}

impl fmt::Display for KindWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KindWitness::Identity { kind, a, b } => write!(
                f,
                "{kind} identity fails on the pair (E_{},{}, E_{},{})",
                a.0, a.1, b.0, b.1
            ),
            KindWitness::DiagonalValue { at } => {
                write!(f, "nonzero image on diagonal basis element E_{},{}", at.0, at.1)
            }
        }
    }
}

/// Checks the defining identity of `kind` on every ordered basis pair, in
/// canonical order; bilinearity makes basis pairs sufficient. Returns the
/// first failure, or `None` when the map is of that kind.
pub fn check_kind(f: &LinearMap, kind: MapKind) -> Option<KindWitness> {
    if kind == MapKind::AntiderivationDiag0 {
        if let Some(w) = diagonal_witness(f) {
            return Some(w);
        }
        return check_kind(f, MapKind::Antiderivation).map(|w| match w {
            KindWitness::Identity { a, b, .. } => KindWitness::Identity {
                kind: MapKind::AntiderivationDiag0,
                a,
                b,
            },
            other => other,
        });
    }

    let m = f.bimodule();
    let basis = m.basis();
    let dim = m.dim();
    for (ai, &(i, j)) in basis.pairs().iter().enumerate() {
        for (bi, &(k, l)) in basis.pairs().iter().enumerate() {
            // E_ij * E_kl = [j = k] E_il; both orders are needed below.
            let ab = (j == k).then(|| basis.index_of(i, l).expect("closed"));
            let ba = (l == i).then(|| basis.index_of(k, j).expect("closed"));
            let image = |idx: Option<usize>| -> Vec<Rational> {
                match idx {
                    Some(e) => f.image(e).to_vec(),
                    None => vec![Rational::zero(); dim],
                }
            };
            let (lhs, rhs) = match kind {
                MapKind::Derivation => {
                    // D(ab) = D(a)b + aD(b).
                    let lhs = image(ab);
                    let rhs = add(&m.right(bi).matvec(f.image(ai)), &m.left(ai).matvec(f.image(bi)));
                    (lhs, rhs)
                }
                MapKind::Antiderivation => {
                    // D(ab) = D(b)a + bD(a).
                    let lhs = image(ab);
                    let rhs = add(&m.right(ai).matvec(f.image(bi)), &m.left(bi).matvec(f.image(ai)));
                    (lhs, rhs)
                }
                MapKind::Jordan => {
                    // D(ab + ba) = D(a)b + aD(b) + D(b)a + bD(a).
                    let lhs = add(&image(ab), &image(ba));
                    let rhs = add(
                        &add(&m.right(bi).matvec(f.image(ai)), &m.left(ai).matvec(f.image(bi))),
                        &add(&m.right(ai).matvec(f.image(bi)), &m.left(bi).matvec(f.image(ai))),
                    );
                    (lhs, rhs)
                }
                MapKind::AntiderivationDiag0 => unreachable!("handled above"),
            };
            if lhs != rhs {
                return Some(KindWitness::Identity { kind, a: (i, j), b: (k, l) });
            }
        }
    }
    None
}

/// `true` when the map satisfies the kind's identity (and, for the
/// diagonal-vanishing kind, the vanishing condition).
pub fn is_kind(f: &LinearMap, kind: MapKind) -> bool {
    check_kind(f, kind).is_none()
}

fn diagonal_witness(f: &LinearMap) -> Option<KindWitness> {
    let basis = f.bimodule().basis();
    diagonal_basis(f.partition())
        .into_iter()
        .find(|&idx| !f.image(idx).iter().all(Rational::is_zero))
        .map(|idx| KindWitness::DiagonalValue { at: basis.pair(idx) })
}

/// Whether all images on the block-diagonal subalgebra are zero.
pub fn vanishes_on_diagonal(f: &LinearMap) -> bool {
    diagonal_witness(f).is_none()
}

fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{corner_scalar_bimodule, natural_bimodule, BlockPartition};
    use crate::maps::linear_map::inner_derivation;
    use std::sync::Arc;

    fn part(parts: &[usize]) -> BlockPartition {
        BlockPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn zero_map_is_everything() {
        let m = Arc::new(natural_bimodule(&part(&[2, 1])));
        let z = LinearMap::zero(m);
        for kind in MapKind::ALL {
            assert!(is_kind(&z, kind), "{kind}");
        }
        assert!(vanishes_on_diagonal(&z));
    }

    #[test]
    fn inner_derivations_are_derivations_and_jordan() {
        let m = Arc::new(natural_bimodule(&part(&[1, 1])));
        let v: Vec<Rational> = (0..4).map(|t| Rational::from_i64(t as i64 - 2)).collect();
        let f = inner_derivation(&m, &v).unwrap();
        assert!(is_kind(&f, MapKind::Derivation));
        assert!(is_kind(&f, MapKind::Jordan));
    }

    #[test]
    fn corner_antiderivation_with_witness() {
        // alpha(E00) = alpha(E11) = 0, alpha(E01) = 1 on the corner module.
        let p = part(&[1, 1]);
        let m = Arc::new(corner_scalar_bimodule(&p).unwrap());
        let alpha = LinearMap::new(
            Arc::clone(&m),
            vec![
                vec![Rational::zero()],
                vec![Rational::one()],
                vec![Rational::zero()],
            ],
        )
        .unwrap();
        assert!(is_kind(&alpha, MapKind::Antiderivation));
        assert!(is_kind(&alpha, MapKind::AntiderivationDiag0));
        assert!(vanishes_on_diagonal(&alpha));
        // Not a derivation: D(E00 * E01) = D(E01) = 1, but
        // D(E00)E01 + E00 D(E01) = 0.
        assert_eq!(
            check_kind(&alpha, MapKind::Derivation),
            Some(KindWitness::Identity {
                kind: MapKind::Derivation,
                a: (0, 0),
                b: (0, 1),
            })
        );
    }

    #[test]
    fn diagonal_vanishing_detects_nonzero_diagonal_image() {
        let p = part(&[1, 1]);
        let m = Arc::new(corner_scalar_bimodule(&p).unwrap());
        let f = inner_derivation(&m, &[Rational::one()]).unwrap();
        // I_v(E00) = -1 here, so the map does not vanish on the diagonal.
        assert!(!vanishes_on_diagonal(&f));
        assert_eq!(
            check_kind(&f, MapKind::AntiderivationDiag0),
            Some(KindWitness::DiagonalValue { at: (0, 0) })
        );
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in MapKind::ALL {
            assert_eq!(kind.as_str().parse::<MapKind>().unwrap(), kind);
        }
        assert!("der".parse::<MapKind>().is_err());
    }
}
