//! Counter-based random streams.
//!
//! Every stochastic quantity is drawn from `stream(seed, index)`, where the
//! index names the trial (or MC sample). A trial's numbers therefore depend
//! only on `(seed, index)` and never on which thread ran it or in what order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type Stream = ChaCha8Rng;

/// Independent stream for trial `index` under `seed`.
pub fn stream(seed: u64, index: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Derive a child seed, for nesting one seeded experiment inside another.
pub fn child_seed(seed: u64, tag: u64) -> u64 {
    // splitmix64 finalizer over the pair
    let mut z = seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Standard normal conditioned on |z| <= `limit` (rejection).
pub fn truncated_normal<R: Rng + ?Sized>(rng: &mut R, limit: f64) -> f64 {
    loop {
        let z = normal(rng);
        if z.abs() <= limit {
            return z;
        }
    }
}
