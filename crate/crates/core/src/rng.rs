//! Seeded random streams.
//!
//! Every consumer draws from a ChaCha8 generator keyed by the user seed.
//! Independent consumers and parallel workers use distinct stream numbers
//! of the same key, so results never depend on thread count or scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream numbers reserved for each consumer. Sampling workers use
/// `SAMPLE_BASE + chunk index`.
pub mod streams {
    pub const ORTHOGONAL: u64 = 1;
    pub const EIGEN_DIRECTED: u64 = 2;
    pub const BLOCKDIAG_SEARCH: u64 = 3;
    pub const SAMPLE_BASE: u64 = 1 << 32;
}

pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
