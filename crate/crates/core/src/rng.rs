//! Seed derivation for reproducible random streams.
//!
//! Every random experiment draws from a `ChaCha8Rng` seeded with
//! [`stream_seed`]`(seed, group, index)`, so a trial's stream depends only on
//! its coordinates and not on thread count or evaluation order.

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn stream_seed(seed: u64, group: u64, index: u64) -> u64 {
    mix(mix(mix(seed) ^ group) ^ index)
}
