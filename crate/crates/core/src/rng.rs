//! Seeded random streams.
//!
//! Every stochastic routine draws from [`SimRng`], ChaCha8 seeded through
//! `SeedableRng::seed_from_u64`. Parallel workers share the master seed and
//! differ only in the ChaCha stream id, which is the worker index. Independent
//! sub-experiments (the terms of one inequality report, say) use
//! [`derive_seed`] to obtain distinct master seeds.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// The random stream owned by `worker` under master seed `seed`.
pub fn worker_stream(seed: u64, worker: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker);
    rng
}

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Master seed for sub-experiment `index` of a run seeded with `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index.wrapping_add(1)))
}
