//! Restriction of a map to the lower-right corner.

use std::sync::Arc;

use crate::algebra::CornerCompression;
use crate::error::Error;

use super::linear_map::LinearMap;

/// Restricts `f` to the corner: for each tail basis element `E'_ij` the
/// image is the corner projection of `f(E_{i+n1, j+n1})`. When `f` is a
/// Jordan derivation the result is one over the tail algebra, which the
/// recursion relies on.
pub fn restrict_corner_map(f: &LinearMap, cc: &CornerCompression) -> crate::Result<LinearMap> {
    let parent = f.partition();
    let tail = cc.sub_bimodule().partition();
    if parent.k() < 2 {
        return Err(Error::NotSplittable);
    }
    if &parent.tail()? != tail {
        return Err(Error::PartitionMismatch);
    }
    let offset = parent.parts()[0];
    let images = cc
        .sub_bimodule()
        .basis()
        .pairs()
        .iter()
        .map(|&(i, j)| {
            let parent_idx = f
                .bimodule()
                .basis()
                .index_of(i + offset, j + offset)
                .expect("shifted tail pair is admissible");
            cc.project_vec(f.image(parent_idx))
        })
        .collect();
    LinearMap::new(Arc::clone(cc.sub_bimodule()), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{compress_corner, natural_bimodule, regular_bimodule, BlockPartition};
    use crate::linalg::{Rational, Scalar};
    use crate::maps::linear_map::inner_derivation;

    fn part(parts: &[usize]) -> BlockPartition {
        BlockPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn zero_restricts_to_zero() {
        let m = Arc::new(natural_bimodule(&part(&[2, 1])));
        let cc = compress_corner(&m).unwrap();
        let z = LinearMap::zero(Arc::clone(&m));
        assert!(restrict_corner_map(&z, &cc).unwrap().is_zero());
    }

    #[test]
    fn corner_kills_leading_corner_images() {
        // A map whose images live in P.M.P restricts to zero.
        let p = part(&[1, 1]);
        let m = Arc::new(natural_bimodule(&p));
        let mut images = vec![vec![Rational::zero(); 4]; 3];
        for img in &mut images {
            img[0] = Rational::from_i64(3); // the (0,0) entry of M2
        }
        let f = LinearMap::new(Arc::clone(&m), images).unwrap();
        let cc = compress_corner(&m).unwrap();
        assert!(restrict_corner_map(&f, &cc).unwrap().is_zero());
    }

    #[test]
    fn regular_inner_restriction_example() {
        // I_{E01} on the regular bimodule of T2 sends E11 to -E01, whose
        // corner projection is zero.
        let p = part(&[1, 1]);
        let m = Arc::new(regular_bimodule(&p));
        let mut v = vec![Rational::zero(); m.dim()];
        v[1] = Rational::one(); // E01
        let f = inner_derivation(&m, &v).unwrap();
        let cc = compress_corner(&m).unwrap();
        let g = restrict_corner_map(&f, &cc).unwrap();
        assert!(g.is_zero());
    }
}
