//! Seeded, portable randomness.
//!
//! Every try of a run draws from its own ChaCha stream derived from the
//! master seed, so results do not depend on execution order or thread count:
//! sampling try `i` uses stream `i`, guided try `j` uses stream `n1 + j`.

use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;

/// RNG for one try: master seed selects the key, `stream` the stream id.
pub fn try_rng(master_seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}

/// Stateless mixer (splitmix64 finalizer).
fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Distinct master seed for repetition `rep` of item `index` in a campaign.
pub fn derive_seed(master_seed: u64, index: u64, rep: u64) -> u64 {
    mix(master_seed ^ mix(index ^ mix(rep)))
}
