//! Seeded sampling helpers.
//!
//! The sampling arithmetic is written out here instead of going through
//! `rand`'s distribution machinery so that emitted values depend only on the
//! ChaCha stream, not on distribution internals that may change between
//! `rand` releases. Reproducibility of archived runs depends on this.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from `[0, 1)` using the top 53 bits of one `u64`.
pub fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform index in `0..n`. Modulo bias is below 2^-44 for any `n` that fits
/// a deployment, far under anything observable here.
pub fn index(rng: &mut ChaCha8Rng, n: usize) -> usize {
    debug_assert!(n > 0);
    (rng.next_u64() % n as u64) as usize
}

/// Draws `count` distinct elements from `pool` by partial Fisher-Yates.
/// The draw order is part of the contract: callers use it for seeding.
pub fn sample_distinct<T: Copy>(rng: &mut ChaCha8Rng, pool: &[T], count: usize) -> Vec<T> {
    debug_assert!(count <= pool.len());
    let mut pool = pool.to_vec();
    for i in 0..count {
        let j = i + index(rng, pool.len() - i);
        pool.swap(i, j);
    }
    pool.truncate(count);
    pool
}
