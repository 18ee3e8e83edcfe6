//! Deterministic derivation of child RNG seeds.
//!
//! Everything stochastic in this crate (annealing reads, shot sampling, VQE
//! refinement) owns a `u64` seed. When one seeded component needs several
//! independent streams, it derives child seeds with [`derive_seed`] instead of
//! reusing or incrementing its own seed, so streams stay uncorrelated and runs
//! stay reproducible across platforms.

/// Derives the `index`-th child seed from a master seed.
///
/// Uses the SplitMix64 finalizer over `master + (index + 1) * GOLDEN_GAMMA`,
/// which maps nearby (master, index) pairs to statistically unrelated outputs.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
