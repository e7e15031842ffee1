//! Seed plumbing shared by the generators.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic generator used everywhere a seeded draw is needed.
///
/// ChaCha8 output is specified independently of platform and word size, so a
/// given seed reproduces the same stream everywhere.
pub type DesignRng = ChaCha8Rng;

pub fn rng(seed: u64) -> DesignRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes a base seed with a stream index (splitmix64 finalizer).
///
/// Used to give each design in a batch, or each stage of a pipeline, its own
/// independent stream while staying replayable from a single seed.
pub fn derive(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
