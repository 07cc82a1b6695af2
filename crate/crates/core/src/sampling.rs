//! Seeded randomness. Every random choice in a run is drawn from one
//! [`SeededRng`] so that `(input, seed)` fully determines the output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::Scalar;

pub type SeededRng = ChaCha8Rng;

/// Coordinates of sampled general vectors and points lie in `[-BOUND, BOUND]`.
pub const SAMPLE_BOUND: i64 = 10;

/// How many times a sampler may redraw before giving up.
pub const RESAMPLE_BUDGET: usize = 20;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int_vector(rng: &mut SeededRng, len: usize) -> Vec<Scalar> {
    (0..len)
        .map(|_| Scalar::from_int(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND)))
        .collect()
}

/// A nonzero integer in `[-bound, bound]`.
pub fn small_nonzero_int(rng: &mut SeededRng, bound: i64) -> i64 {
    loop {
        let x = rng.gen_range(-bound..=bound);
        if x != 0 {
            return x;
        }
    }
}
