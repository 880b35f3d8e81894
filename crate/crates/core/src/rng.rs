//! Seeded randomness.
//!
//! Everything random in the crate draws from ChaCha8 streams. A single
//! 64-bit seed fixes the key; each consumer selects its own stream id, so
//! the Gaussian entries of a map and, say, the pair sample of a distortion
//! report never share a keystream even when the caller reuses a seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Stream ids used inside the crate.
pub mod stream {
    pub const GAUSSIAN: u64 = 1;
    pub const BINARY: u64 = 2;
    pub const FAST_SIGNS: u64 = 3;
    pub const FAST_ROWS: u64 = 4;
    pub const PAIRS: u64 = 5;
    pub const ESTIMATE: u64 = 6;
    pub const SYNTH: u64 = 7;
    pub const INJECT: u64 = 8;
}

/// Deterministic generator for `(seed, stream)`.
pub fn seeded(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Derives an independent child seed, e.g. one per trial of an experiment.
pub fn child_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer over the pair
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
