//! Seeded random streams.
//!
//! Every random consumer draws from `stream_rng(master, stream)`: a xoshiro256++
//! generator seeded from a SplitMix64 mix of the 64-bit master seed and a 64-bit stream
//! id. Stream ids are assigned by position (ladder repetition and level, sample index,
//! generator family), so any result can be replayed from its master seed alone.

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

pub type StreamRng = Xoshiro256PlusPlus;

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

pub fn stream_rng(master: u64, stream: u64) -> StreamRng {
    Xoshiro256PlusPlus::seed_from_u64(splitmix64(master ^ splitmix64(stream)))
}

/// Stream id for a `(major, minor)` pair such as (repetition, level).
pub fn stream_id(major: u64, minor: u64) -> u64 {
    (major << 32) ^ minor
}
