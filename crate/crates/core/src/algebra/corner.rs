//! Compression of a bimodule to its lower-right corner, the module side of
//! the recursion step.

use std::sync::Arc;

use crate::error::Error;
use crate::linalg::{rref, Matrix, Rational, Scalar};

use super::bimodule::Bimodule;
use super::element::pq_split;
use super::partition::canonical_basis;

/// The corner `QMQ` of a bimodule `M`, presented as a bimodule over the
/// tail algebra together with the coordinate change between `M` and the
/// corner.
///
/// `embed` maps corner coordinates into `M`; `project` maps `M` onto corner
/// coordinates. They satisfy `project * embed = identity` and
/// `embed * project = pi`, the idempotent `v -> Q.v.Q` on `M`. A zero
/// corner (dimension 0) is legal and everything below degenerates
/// gracefully.
#[derive(Clone, Debug)]
pub struct CornerCompression {
    sub_bimodule: Arc<Bimodule>,
    embed: Matrix<Rational>,
    project: Matrix<Rational>,
}

impl CornerCompression {
    pub fn sub_bimodule(&self) -> &Arc<Bimodule> {
        &self.sub_bimodule
    }

    pub fn embed(&self) -> &Matrix<Rational> {
        &self.embed
    }

    pub fn project(&self) -> &Matrix<Rational> {
        &self.project
    }

    /// Corner coordinates -> `M` coordinates.
    pub fn embed_vec(&self, v: &[Rational]) -> Vec<Rational> {
        self.embed.matvec(v)
    }

    /// `M` coordinates -> corner coordinates.
    pub fn project_vec(&self, v: &[Rational]) -> Vec<Rational> {
        self.project.matvec(v)
    }
}

/// Builds the corner compression of `m` along the split `P = F_1`,
/// `Q = I - P`.
///
/// The corner basis is deterministic: the columns of the idempotent
/// `pi = act_L(Q) * act_R(Q)` at the pivot columns of `rref(pi)`. The
/// sub-actions conjugate the parent actions of shifted tail basis elements
/// by embed/project.
pub fn compress_corner(m: &Bimodule) -> crate::Result<CornerCompression> {
    let p = m.partition();
    if p.k() < 2 {
        return Err(Error::NotSplittable);
    }
    let (_, q, tail) = pq_split(p)?;
    let pi = m.act_left(&q)?.matmul(&m.act_right(&q)?);
    let reduced = rref(&pi);
    let embed = pi.select_columns(&reduced.pivot_columns);
    let sub_dim = reduced.rank;

    // project solves embed * X = pi. Eliminating [embed | pi] puts the
    // identity over embed's columns (they are independent) and X in the
    // augmented part; pi's columns all lie in their span, so the rank
    // cannot exceed sub_dim.
    let dim = m.dim();
    let mut augmented = Matrix::zeros(dim, sub_dim + dim);
    for r in 0..dim {
        for (c, v) in embed.row_nonzeros(r) {
            augmented.set(r, c, v.clone());
        }
        for (c, v) in pi.row_nonzeros(r) {
            augmented.set(r, sub_dim + c, v.clone());
        }
    }
    let solved = rref(&augmented);
    assert_eq!(
        solved.rank, sub_dim,
        "projection image must be spanned by its pivot columns"
    );
    let mut project = Matrix::zeros(sub_dim, dim);
    for r in 0..sub_dim {
        for c in 0..dim {
            let v = solved.reduced.get(r, sub_dim + c);
            if !v.is_zero() {
                project.set(r, c, v.clone());
            }
        }
    }

    let tail_basis = canonical_basis(&tail);
    let mut sub_left = Vec::with_capacity(tail_basis.len());
    let mut sub_right = Vec::with_capacity(tail_basis.len());
    let offset = p.parts()[0];
    for &(i, j) in tail_basis.pairs() {
        let parent_idx = m
            .basis()
            .index_of(i + offset, j + offset)
            .expect("shifted tail pair is admissible");
        sub_left.push(project.matmul(m.left(parent_idx)).matmul(&embed));
        sub_right.push(project.matmul(m.right(parent_idx)).matmul(&embed));
    }
    let sub_bimodule = Arc::new(Bimodule::from_actions(
        tail,
        sub_dim,
        sub_left,
        sub_right,
        format!("corner({})", m.label()),
    )?);
    Ok(CornerCompression { sub_bimodule, embed, project })
}
