//! Deterministic seed derivation.
//!
//! Every randomized component in this crate owns a `ChaCha8Rng` seeded
//! through the helpers below, so the draw count of one component can never
//! shift the stream of another. In particular the evolutionary engine
//! derives one independent stream per (seed, generation, slot), which is
//! what makes its output independent of evaluation parallelism.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer: a fixed, well-mixed 64-bit permutation.
///
/// Used as the mixing primitive for seed derivation; the constants are the
/// standard ones from Steele et al.'s SplitMix64.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives an independent sub-seed from a base seed and one stream index.
pub fn derive2(base: u64, stream: u64) -> u64 {
    splitmix64(base ^ splitmix64(stream ^ 0xa076_1d64_78bd_642f))
}

/// Derives an independent sub-seed from a base seed and two stream indices.
pub fn derive3(base: u64, stream: u64, index: u64) -> u64 {
    splitmix64(derive2(base, stream) ^ splitmix64(index ^ 0xe703_7ed1_a0b4_28db))
}

/// A ChaCha8 generator for `seed`. ChaCha8 keeps identical output across
/// platforms and releases, which the reproducibility contract relies on.
pub fn chacha(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_a_permutation_on_samples() {
        // Not a full bijectivity proof, just a collision sanity check over
        // structured inputs (sequential counters, the common seeding case).
        let mut seen = std::collections::HashSet::new();
        for i in 0..10_000u64 {
            assert!(seen.insert(splitmix64(i)));
        }
    }

    #[test]
    fn derivation_separates_streams() {
        // Neighboring (stream, index) pairs must not collide or correlate
        // trivially.
        let a = derive3(42, 0, 0);
        let b = derive3(42, 0, 1);
        let c = derive3(42, 1, 0);
        let d = derive3(43, 0, 0);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
        assert_ne!(b, c);
    }

    #[test]
    fn chacha_streams_are_stable() {
        use rand::RngCore;
        // Same seed, same leading output — run twice to catch accidental
        // global state.
        let x1 = chacha(7).next_u64();
        let x2 = chacha(7).next_u64();
        assert_eq!(x1, x2);
    }
}
