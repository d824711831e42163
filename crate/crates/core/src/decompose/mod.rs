//! The constructive decomposition: peel the inner correction, compress to
//! the corner, recurse, reassemble.

mod steps;

pub use steps::{verify_proof_steps, StepCheckConfig, StepReport, StepResult};

use crate::algebra::{compress_corner, pq_split, BlockPartition};
use crate::error::Error;
use crate::linalg::{Rational, Scalar};
use crate::maps::{
    check_kind, inner_derivation, restrict_corner_map, DecompositionPair, LinearMap, MapKind,
};

/// Per-level record of the recursion.
#[derive(Clone, Debug)]
pub struct TraceLevel {
    /// Partition at this level.
    pub partition: BlockPartition,
    /// The correction element `B = P.f(P).Q - Q.f(P).P` in the level's
    /// module coordinates.
    pub b: Vec<Rational>,
    /// Dimension of the corner module recursed into.
    pub sub_dim: usize,
}

/// The recursion's audit trail: one level per split, so `k - 1` entries
/// for a depth-`k` input; the base case records nothing.
#[derive(Clone, Debug, Default)]
pub struct DecompositionTrace {
    pub levels: Vec<TraceLevel>,
}

/// The correction element `B = P.f(P).Q - Q.f(P).P`. Subtracting the inner
/// derivation of `B` from `f` kills both mixed corners of the image of
/// `P`.
pub fn correction_element(f: &LinearMap) -> crate::Result<Vec<Rational>> {
    let (pe, q, _) = pq_split(f.partition())?;
    let m = f.bimodule();
    let fp = f.apply(&pe)?;
    let pfpq = m.act_left_vec(&pe, &m.act_right_vec(&q, &fp)?)?;
    let qfpp = m.act_left_vec(&q, &m.act_right_vec(&pe, &fp)?)?;
    Ok(pfpq.iter().zip(&qfpp).map(|(a, b)| a.sub(b)).collect())
}

/// Decomposes a Jordan derivation into derivation + antiderivation with
/// the antiderivation vanishing on the block-diagonal subalgebra.
///
/// Every internal step that the underlying theorem guarantees is asserted,
/// not assumed; a failed assertion surfaces as
/// [`Error::TheoremViolation`] and would be a falsification witness, so it
/// must never fire on valid input.
pub fn decompose(f: &LinearMap) -> crate::Result<(DecompositionPair, DecompositionTrace)> {
    if let Some(w) = check_kind(f, MapKind::Jordan) {
        return Err(Error::NotJordan(w));
    }
    let (d, alpha, levels) = decompose_inner(f)?;
    let sum = d.add(&alpha)?;
    if &sum != f {
        return Err(Error::TheoremViolation {
            step: "assembly_sum".into(),
            detail: "d + alpha differs from the input map".into(),
        });
    }
    Ok((DecompositionPair { d, alpha }, DecompositionTrace { levels }))
}

fn decompose_inner(f: &LinearMap) -> crate::Result<(LinearMap, LinearMap, Vec<TraceLevel>)> {
    let p = f.partition().clone();
    if p.k() == 1 {
        // Single block: a Jordan derivation of a full matrix algebra is a
        // derivation. Checked, not trusted.
        if let Some(w) = check_kind(f, MapKind::Derivation) {
            return Err(Error::TheoremViolation {
                step: "base_case_derivation".into(),
                detail: w.to_string(),
            });
        }
        let zero = LinearMap::zero(f.bimodule().clone());
        return Ok((f.clone(), zero, Vec::new()));
    }

    let m = f.bimodule();
    let b = correction_element(f)?;
    let ib = inner_derivation(m, &b)?;
    let delta = f.sub(&ib)?;

    // The corrected map must kill both mixed corners of Delta(P).
    let (pe, q, _) = pq_split(&p)?;
    let dp = delta.apply(&pe)?;
    let pdpq = m.act_left_vec(&pe, &m.act_right_vec(&q, &dp)?)?;
    let qdpp = m.act_left_vec(&q, &m.act_right_vec(&pe, &dp)?)?;
    if !pdpq.iter().all(Rational::is_zero) || !qdpp.iter().all(Rational::is_zero) {
        return Err(Error::TheoremViolation {
            step: "correction_annihilation".into(),
            detail: "P.Delta(P).Q or Q.Delta(P).P is nonzero".into(),
        });
    }

    let cc = compress_corner(m)?;
    let corner = restrict_corner_map(&delta, &cc)?;
    if let Some(w) = check_kind(&corner, MapKind::Jordan) {
        return Err(Error::TheoremViolation {
            step: "corner_jordan".into(),
            detail: w.to_string(),
        });
    }
    let (g, gamma, sub_levels) = decompose_inner(&corner)?;

    // Assemble per basis element. Exactly one Peirce corner carries each
    // unit, so the three formula terms never overlap.
    let offset = p.parts()[0];
    let dim = m.dim();
    let mut delta_images = Vec::with_capacity(m.basis().len());
    let mut alpha_images = Vec::with_capacity(m.basis().len());
    for (idx, &(i, j)) in m.basis().pairs().iter().enumerate() {
        let v = delta.image(idx);
        let (dv, av) = if p.block_of(i) == 0 && p.block_of(j) == 0 {
            let dv = m.act_left_vec(&pe, &m.act_right_vec(&pe, v)?)?;
            (dv, vec![Rational::zero(); dim])
        } else if p.block_of(i) == 0 {
            let dv = m.act_left_vec(&pe, &m.act_right_vec(&q, v)?)?;
            let av = m.act_left_vec(&q, &m.act_right_vec(&pe, v)?)?;
            (dv, av)
        } else {
            let t = cc
                .sub_bimodule()
                .basis()
                .index_of(i - offset, j - offset)
                .expect("corner pair is admissible in the tail");
            (cc.embed_vec(g.image(t)), cc.embed_vec(gamma.image(t)))
        };
        delta_images.push(dv);
        alpha_images.push(av);
    }
    let delta_part = LinearMap::new(f.bimodule().clone(), delta_images)?;
    let alpha = LinearMap::new(f.bimodule().clone(), alpha_images)?;
    let d = delta_part.add(&ib)?;

    let mut levels = vec![TraceLevel {
        partition: p,
        b,
        sub_dim: cc.sub_bimodule().dim(),
    }];
    levels.extend(sub_levels);
    Ok((d, alpha, levels))
}
