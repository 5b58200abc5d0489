//! Portable pseudo-random source.
//!
//! Instances must reproduce bit-exactly in any language, so the generator and
//! the integer sampling rule are pinned here rather than delegated to a crate
//! whose output stream may change between releases.
//!
//! Generator: SplitMix64.
//!
//! ```text
//! state = state + 0x9E3779B97F4A7C15            (wrapping)
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9      (wrapping)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB      (wrapping)
//! return z ^ (z >> 31)
//! ```
//!
//! Bounded integers use rejection sampling: with `span = hi - lo + 1`, draws
//! below `(2^64 - span) mod span` are rejected and the result is
//! `lo + x mod span`.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const MIX_1: u64 = 0xBF58_476D_1CE4_E5B9;
const MIX_2: u64 = 0x94D0_49BB_1331_11EB;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(MIX_1);
        z = (z ^ (z >> 27)).wrapping_mul(MIX_2);
        z ^ (z >> 31)
    }

    /// Uniform integer in `[lo, hi]`, both inclusive, without modulo bias.
    pub fn uniform_inclusive(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo).wrapping_add(1);
        if span == 0 {
            // full 64-bit range
            return self.next_u64();
        }
        let threshold = span.wrapping_neg() % span;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return lo + x % span;
            }
        }
    }

    /// Uniform index in `[0, n)`.
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        self.uniform_inclusive(0, n as u64 - 1) as usize
    }

    /// Uniform double in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Seed of the `index`-th instance of a sweep.
pub fn instance_seed(base_seed: u64, index: u64) -> u64 {
    base_seed.wrapping_add(index)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_stream() {
        // Published SplitMix64 outputs for seed 1234567.
        let mut rng = SplitMix64::new(1234567);
        let expected = [
            6457827717110365317u64,
            3203168211198807973,
            9817491932198370423,
            4593380528125082431,
            16408922859458223821,
        ];
        for e in expected {
            assert_eq!(rng.next_u64(), e);
        }
    }

    #[test]
    fn uniform_respects_bounds() {
        let mut rng = SplitMix64::new(3);
        for _ in 0..10_000 {
            let x = rng.uniform_inclusive(1, 20);
            assert!((1..=20).contains(&x));
        }
        assert_eq!(rng.uniform_inclusive(5, 5), 5);
        let _ = rng.uniform_inclusive(0, u64::MAX);
    }

    #[test]
    fn uniform_hits_both_ends() {
        let mut rng = SplitMix64::new(11);
        let mut seen = [false; 3];
        for _ in 0..200 {
            seen[rng.uniform_inclusive(0, 2) as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn f64_in_unit_interval() {
        let mut rng = SplitMix64::new(9);
        for _ in 0..1000 {
            let x = rng.next_f64();
            assert!((0.0..1.0).contains(&x));
        }
    }
}
