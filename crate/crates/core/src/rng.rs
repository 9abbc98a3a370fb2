//! Seeded random streams.
//!
//! Every Monte Carlo work unit draws from its own ChaCha8 stream, keyed by a
//! master seed, a domain tag (for example the message size `k` of a sweep
//! point) and the trial index. Results therefore do not depend on how trials
//! are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TrialRng = ChaCha8Rng;

/// Independent stream for `(master_seed, domain, index)`.
pub fn stream(master_seed: u64, domain: u64, index: u64) -> TrialRng {
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&master_seed.to_le_bytes());
    seed[8..16].copy_from_slice(&domain.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(seed);
    rng.set_stream(index);
    rng
}
