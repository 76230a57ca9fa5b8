//! Seeded random number generation.
//!
//! Every stochastic routine in the crate draws from [`ChaCha8Rng`] seeded via
//! `SeedableRng::seed_from_u64`. ChaCha8 output is specified bit-for-bit, so a
//! seed reproduces the same corpus on every platform. Per-course streams are
//! derived as `seed ^ course_index`.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng as ForumRng;

pub fn seeded(seed: u64) -> ForumRng {
    ForumRng::seed_from_u64(seed)
}

/// Seed for the independent stream of course `index`.
pub fn course_seed(seed: u64, index: usize) -> u64 {
    seed ^ index as u64
}

/// Seed for trial `trial` of an experiment; mixes with a large odd constant so
/// trial streams do not collide with per-course streams of the same base seed.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_add((trial as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}
