//! Deterministic pseudo-random numbers for sampling and diagnostics.
//!
//! Every seeded operation in this crate draws from the SplitMix64 generator
//! defined here, so identical seeds give identical output on every platform
//! and in any reimplementation. The update rule is fixed:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! output = z ^ (z >> 31)
//! ```
//!
//! all in wrapping 64-bit arithmetic, with `state` initialised to the seed.

/// SplitMix64 stream with the constants documented in the module docs.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Next raw 64-bit output.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..bound` by rejection, so every residue is
    /// exactly equally likely. `bound` must be nonzero.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        // Reject draws at or above the largest multiple of `bound`, which
        // removes modulo bias.
        let cutoff = (u64::MAX / bound) * bound;
        loop {
            let x = self.next_u64();
            if x < cutoff {
                return x % bound;
            }
        }
    }

    /// Uniform integer coefficient in `[-9, 9]`, the range used by all map
    /// and element sampling.
    pub fn next_coefficient(&mut self) -> i64 {
        self.next_below(19) as i64 - 9
    }
}
