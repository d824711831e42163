//! Seeded sampling from a space basis.

use crate::linalg::{Rational, Scalar};
use crate::rng::SplitMix64;

use super::constraints::SpaceBasis;
use super::linear_map::LinearMap;

/// A deterministic member of the space: integer coefficients in `[-9, 9]`
/// drawn from the seeded generator, one per basis map in order. The empty
/// space yields the zero map.
pub fn sample_map(space: &SpaceBasis, seed: u64) -> LinearMap {
    let mut rng = SplitMix64::new(seed);
    let mut acc = LinearMap::zero(space.bimodule().clone());
    for basis_map in space.maps() {
        let c = rng.next_coefficient();
        if c != 0 {
            acc = acc
                .add(&basis_map.scale(&Rational::from_i64(c)))
                .expect("same bimodule");
        }
    }
    acc
}

/// A random algebra-side sample: coefficients for every basis element,
/// drawn from the same generator family. Used by the proof-step
/// diagnostics to build test elements.
pub fn sample_coefficients(rng: &mut SplitMix64, count: usize) -> Vec<Rational> {
    (0..count).map(|_| Rational::from_i64(rng.next_coefficient())).collect()
}
