//! Seeded random sources.
//!
//! Every stochastic operation builds its own ChaCha20 generator from the
//! caller's seed and a fixed per-operation stream id, so a call's output
//! depends only on `(seed, operation, arguments)` and never on what else
//! ran before it or on which thread.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Stream ids, one per stochastic operation.
pub mod streams {
    pub const UNIFORM: u64 = 1;
    pub const VMF: u64 = 2;
    pub const MIXTURE: u64 = 3;
    pub const ROTATION: u64 = 4;
}

/// Generator for one operation call.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
