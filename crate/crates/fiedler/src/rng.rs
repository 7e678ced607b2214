//! Counter-based randomness built on SplitMix64 (v1, frozen).
//!
//! Every random decision in this crate is a pure function of a 64-bit seed
//! and a 64-bit counter: the value at position `c` of the stream keyed by
//! `seed` is
//!
//! ```text
//! mix64(seed + (c + 1) * GOLDEN_GAMMA)
//! ```
//!
//! where `mix64` is the SplitMix64 finalizer (Steele, Lea & Flood 2014,
//! the variant used by Java's `SplittableRandom`) and `GOLDEN_GAMMA` is
//! 0x9E3779B97F4A7C15. Because each draw addresses its counter directly,
//! sampling is order-independent: a graph sampled pair-by-pair in parallel
//! is bit-identical to one sampled sequentially. Child streams (per-trial
//! seeds, noise layers) are derived by re-keying with [`child_seed`], which
//! salts the parent seed before indexing so parent and child streams never
//! alias in practice.
//!
//! The constants and the construction are part of the output contract:
//! changing any of them changes every sampled graph.

/// Weyl-sequence increment of SplitMix64 (2^64 / golden ratio, odd).
pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Salt applied to the seed when deriving child streams.
const CHILD_SALT: u64 = 0xBF58_476D_1CE4_E5B9;

/// SplitMix64 finalizer: a bijective avalanche mix of a 64-bit word.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The `counter`-th word of the stream keyed by `seed`.
#[inline]
pub fn stream_u64(seed: u64, counter: u64) -> u64 {
    mix64(seed.wrapping_add(counter.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// Derives the seed of child stream `index` (trials, layers, restarts).
#[inline]
pub fn child_seed(seed: u64, index: u64) -> u64 {
    stream_u64(seed ^ CHILD_SALT, index)
}

/// Uniform draw in `[0, 1)` with 53 random bits.
#[inline]
pub fn stream_f64(seed: u64, counter: u64) -> f64 {
    (stream_u64(seed, counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Bernoulli(`prob`) decision at `counter`, exact to one part in 2^64.
///
/// The comparison is done against an integer threshold so that `prob = 0.0`
/// never fires and `prob = 1.0` always fires.
#[inline]
pub fn stream_bernoulli(seed: u64, counter: u64, prob: f64) -> bool {
    (stream_u64(seed, counter) as u128) < bernoulli_threshold(prob)
}

#[inline]
fn bernoulli_threshold(prob: f64) -> u128 {
    debug_assert!((0.0..=1.0).contains(&prob), "probability out of range");
    // 2^64 as f64 is exact; the product rounds to nearest representable.
    let t = prob * 18_446_744_073_709_551_616.0;
    if t >= 18_446_744_073_709_551_616.0 {
        1u128 << 64
    } else if t <= 0.0 {
        0
    } else {
        t as u128
    }
}
