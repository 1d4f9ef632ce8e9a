//! Seed management.
//!
//! Every random stream in the crate is a [`ChaCha8Rng`] seeded from a single
//! `u64`. Independent sub-streams (replications, bootstrap replicates,
//! optimizer restarts) get their seeds from [`derive_seed`], a fixed mixing
//! function, so results never depend on execution order or thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// FNV-1a hash of a label, used to separate experiments that share a master seed.
pub fn label_hash(label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}

/// `H(master, index, label) = mix64(mix64(master ^ fnv1a(label)) ^ mix64(index))`.
pub fn derive_seed(master: u64, index: u64, label: &str) -> u64 {
    mix64(mix64(master ^ label_hash(label)) ^ mix64(index.wrapping_add(0x632B_E59B_D9B4_E019)))
}

pub fn rng_from_seed(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}
