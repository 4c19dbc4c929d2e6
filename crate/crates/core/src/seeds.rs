//! Deterministic randomness for experiments.
//!
//! A master seed fans out into independent per-shot streams by a counter
//! derivation, so shots can run in any order (or in parallel) without
//! changing any individual outcome.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random stream for one shot of an experiment: stream `shot` of the cipher
/// keyed by `master_seed`.
pub fn shot_rng(master_seed: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(shot);
    rng
}
