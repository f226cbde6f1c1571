//! Seed derivation so every stochastic stream in a run is a pure function of
//! the user seed and a few integer tags.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type RankRng = ChaCha8Rng;

/// Stream tags for the independent random streams of a training run.
pub mod stream {
    pub const INIT: u64 = 1;
    pub const SHUFFLE: u64 = 2;
    pub const SAMPLE: u64 = 3;
    pub const EVAL: u64 = 4;
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn derive_seed(seed: u64, tags: &[u64]) -> u64 {
    tags.iter().fold(splitmix(seed), |acc, &t| splitmix(acc ^ splitmix(t)))
}

pub fn seeded(seed: u64) -> RankRng {
    RankRng::seed_from_u64(seed)
}

pub fn derived(seed: u64, tags: &[u64]) -> RankRng {
    RankRng::seed_from_u64(derive_seed(seed, tags))
}
