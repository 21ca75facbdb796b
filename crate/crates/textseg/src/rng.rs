//! A small, seedable pseudo-random number generator.
//!
//! Corpus generation and the random baselines must be reproducible from a
//! 64-bit seed across implementations in other languages, so this module
//! pins a named algorithm instead of relying on whatever a general-purpose
//! RNG crate happens to ship: the generator is SplitMix64 (Steele, Lea and
//! Flood's `splitmix64`, the reference seeding generator of the xoshiro
//! family), and every derived draw below documents its exact construction.

/// SplitMix64 generator state.
///
/// The update is `state += 0x9E3779B97F4A7C15` followed by the standard
/// two-round xor-shift-multiply finalizer. All draws consume exactly one
/// `next_u64` call unless stated otherwise.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Creates a generator from a 64-bit seed.
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    /// The next 64 random bits.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// A uniform integer in `[0, bound)` via Lemire's multiply-shift method
    /// with rejection, so the result is exactly uniform. Consumes one
    /// `next_u64` per attempt; rejection is rare for small bounds.
    ///
    /// Panics if `bound` is zero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "below(0) is undefined");
        let mut x = self.next_u64();
        let mut m = (x as u128) * (bound as u128);
        let mut low = m as u64;
        if low < bound {
            let threshold = bound.wrapping_neg() % bound;
            while low < threshold {
                x = self.next_u64();
                m = (x as u128) * (bound as u128);
                low = m as u64;
            }
        }
        let _ = x;
        (m >> 64) as u64
    }

    /// A uniform integer in the inclusive range `[lo, hi]`.
    pub fn range_inclusive(&mut self, lo: u64, hi: u64) -> u64 {
        assert!(lo <= hi, "empty range");
        lo + self.below(hi - lo + 1)
    }

    /// A fair coin flip: bit 0 of one `next_u64` draw.
    pub fn coin(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    /// A uniform `f64` in `[0, 1)`: the top 53 bits of one draw scaled
    /// by 2^-53.
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// A uniform sample of `count` distinct values from `[0, bound)`,
    /// returned in ascending order.
    ///
    /// Implemented as a partial Fisher-Yates shuffle of the full candidate
    /// list: for `i` in `0..count`, swap position `i` with position
    /// `i + below(bound - i)`. The first `count` entries are then an
    /// unordered uniform subset.
    pub fn sample_distinct(&mut self, bound: u64, count: usize) -> Vec<u64> {
        assert!(count as u64 <= bound, "cannot sample {count} of {bound}");
        let mut pool: Vec<u64> = (0..bound).collect();
        for i in 0..count {
            let j = i + self.below(bound - i as u64) as usize;
            pool.swap(i, j);
        }
        let mut picked: Vec<u64> = pool[..count].to_vec();
        picked.sort_unstable();
        picked
    }
}
