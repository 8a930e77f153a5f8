//! Seedable, counter-based random number generation.
//!
//! Every stochastic operation in this workspace takes an explicit seed and
//! draws from [`SplitMix64`] (Steele, Lea & Flood's SplittableRandom
//! finalizer). The generator is a pure function of `(seed, call index)`:
//! the n-th output equals `mix64(seed + n * GOLDEN_GAMMA)`, which makes
//! streams reproducible across platforms and trivially splittable for
//! deterministic parallel work.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Finalizer from SplitMix64: a bijective avalanche mix of a 64-bit word.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// SplitMix64 generator state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Derives an independent stream seed from `(seed, tag)`.
    ///
    /// Used to hand each parallel work item (dataset sample, benchmark
    /// entry, mesh of a pair) its own generator without any ordering
    /// dependence on thread scheduling.
    pub fn derive(seed: u64, tag: u64) -> u64 {
        mix64(seed ^ mix64(tag.wrapping_mul(GOLDEN_GAMMA).wrapping_add(GOLDEN_GAMMA)))
    }

    /// FNV-1a hash of a byte string, for deriving stream tags from ids.
    pub fn hash_bytes(bytes: &[u8]) -> u64 {
        let mut h: u64 = 0xCBF2_9CE4_8422_2325;
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01B3);
        }
        h
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform draw in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in `[lo, hi)`.
    #[inline]
    pub fn next_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.next_f64() * (hi - lo)
    }

    /// Uniform integer in `[0, bound)` via Lemire's multiply-shift.
    #[inline]
    pub fn next_index(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        ((self.next_u64() as u128 * bound as u128) >> 64) as usize
    }

    /// Standard normal draw via Box-Muller.
    ///
    /// Consumes exactly two uniforms per call and discards the paired
    /// variate, so the stream position stays a pure function of the call
    /// count.
    pub fn next_gaussian(&mut self) -> f64 {
        // (0, 1] so the log argument never hits zero.
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
        let u2 = self.next_f64();
        let r = crate::fmath::sqrt(-2.0 * crate::fmath::ln(u1));
        r * crate::fmath::cos(2.0 * core::f64::consts::PI * u2)
    }
}
