//! Decomposition by linear projection, independent of the recursive
//! algorithm.

use crate::error::Error;
use crate::linalg::{solve_in_span, Rational, Scalar};

use super::constraints::{space_basis, SpaceBasis};
use super::kind::{check_kind, MapKind};
use super::linear_map::LinearMap;

/// The two components of a decomposed Jordan derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionPair {
    /// The derivation component.
    pub d: LinearMap,
    /// The antiderivation component, zero on the block-diagonal
    /// subalgebra.
    pub alpha: LinearMap,
}

/// Decomposes `f` by solving for its coordinates in the concatenated bases
/// of the derivation space and the diagonal-vanishing antiderivation
/// space.
///
/// Existence and uniqueness of the theorem make this total on Jordan
/// derivations; a missing solution is therefore reported as a theorem
/// violation, never swallowed.
pub fn project_decompose_oracle(f: &LinearMap) -> crate::Result<DecompositionPair> {
    let der = space_basis(MapKind::Derivation, f.bimodule());
    let anti0 = space_basis(MapKind::AntiderivationDiag0, f.bimodule());
    project_decompose_with_spaces(f, &der, &anti0)
}

/// Same as [`project_decompose_oracle`] with caller-provided spaces, so
/// sweeps over many samples can reuse one computation.
pub fn project_decompose_with_spaces(
    f: &LinearMap,
    der: &SpaceBasis,
    anti0: &SpaceBasis,
) -> crate::Result<DecompositionPair> {
    if let Some(w) = check_kind(f, MapKind::Jordan) {
        return Err(Error::NotJordan(w));
    }
    let basis_coords: Vec<Vec<Rational>> = der
        .maps()
        .iter()
        .chain(anti0.maps())
        .map(LinearMap::coordinates)
        .collect();
    let coords = solve_in_span(&basis_coords, &f.coordinates())?.ok_or_else(|| {
        Error::TheoremViolation {
            step: "projection_oracle".into(),
            detail: "a Jordan derivation fell outside derivation + antiderivation_diag0".into(),
        }
    })?;
    let mut d = LinearMap::zero(f.bimodule().clone());
    let mut alpha = LinearMap::zero(f.bimodule().clone());
    let members = der.maps().iter().chain(anti0.maps());
    for (idx, (c, basis_map)) in coords.iter().zip(members).enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = basis_map.scale(c);
        if idx < der.dim() {
            d = d.add(&term)?;
        } else {
            alpha = alpha.add(&term)?;
        }
    }
    Ok(DecompositionPair { d, alpha })
}
