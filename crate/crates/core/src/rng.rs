//! Seed handling.
//!
//! Every simulation owns one 64-bit seed. Independent streams are carved out of
//! it with ChaCha's 64-bit stream counter, so station `i` always reads the same
//! numbers regardless of how many other stations exist:
//!
//! | stream                    | consumer                          |
//! |---------------------------|-----------------------------------|
//! | `i`                       | protocol draws of station `i`     |
//! | `ARRIVAL_STREAM_BASE + i` | packet arrivals of station `i`    |

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

pub const ARRIVAL_STREAM_BASE: u64 = 1 << 32;

/// Generator for `stream` under `seed`.
pub fn stream(seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn protocol_stream(seed: u64, station: usize) -> SimRng {
    stream(seed, station as u64)
}

pub fn arrival_stream(seed: u64, station: usize) -> SimRng {
    stream(seed, ARRIVAL_STREAM_BASE + station as u64)
}

/// SplitMix64 finalizer; derives per-repetition seeds from a master seed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
