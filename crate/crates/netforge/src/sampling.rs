//! Seeded randomness used across the crate.
//!
//! Everything random in this crate draws from ChaCha8 seeded via
//! `seed_from_u64`, with uniform integers obtained by rejection sampling on
//! the raw 64-bit stream. Both pieces are publicly specified, so identical
//! seeds give identical runs on every platform.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from `0..n` by rejection on `next_u64`.
pub(crate) fn uniform_below(rng: &mut ChaCha8Rng, n: u64) -> u64 {
    assert!(n > 0, "cannot sample from an empty range");
    // Largest multiple of n that fits in u64; values at or above it would
    // bias the remainder.
    let zone = u64::MAX - u64::MAX % n;
    loop {
        let v = rng.next_u64();
        if v < zone {
            return v % n;
        }
    }
}

/// Uniformly random permutation of `0..n` (Fisher-Yates).
pub(crate) fn random_permutation(rng: &mut ChaCha8Rng, n: u64) -> Vec<u32> {
    let mut map: Vec<u32> = (0..n as u32).collect();
    for i in (1..map.len()).rev() {
        let j = uniform_below(rng, i as u64 + 1) as usize;
        map.swap(i, j);
    }
    map
}
