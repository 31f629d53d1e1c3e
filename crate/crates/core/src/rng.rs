//! Deterministic random streams.
//!
//! Every random object in the crate (a document, a query, a trial) draws
//! from its own stream `derive(seed, index)`: a ChaCha8 generator keyed by
//! `seed` and positioned on stream number `index`. Output therefore never
//! depends on generation order or on the number of worker threads.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seedable random state handed to every generator.
#[derive(Debug, Clone)]
pub struct RngState(ChaCha8Rng);

impl RngState {
    pub fn from_seed(seed: u64) -> Self {
        RngState(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Independent stream `index` under `seed`.
    pub fn derive(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        RngState(rng)
    }
}

impl RngCore for RngState {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    #[inline]
    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.0.fill_bytes(dst)
    }
}

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for a named sub-purpose (queries, per-trial collections, ...) so the
/// streams of different purposes never coincide.
#[inline]
pub fn sub_seed(seed: u64, domain: u64) -> u64 {
    mix64(seed ^ mix64(domain.wrapping_add(0x9e37_79b9_7f4a_7c15)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn same_seed_and_index_repeat() {
        let mut a = RngState::derive(42, 7);
        let mut b = RngState::derive(42, 7);
        for _ in 0..8 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn streams_differ() {
        let x: u64 = RngState::derive(42, 0).random();
        let y: u64 = RngState::derive(42, 1).random();
        let z: u64 = RngState::derive(43, 0).random();
        assert_ne!(x, y);
        assert_ne!(x, z);
    }

    #[test]
    fn frozen_first_output() {
        // Guards against silent changes of the stream derivation rule.
        assert_eq!(RngState::derive(1, 2).next_u64(), 16_166_618_085_559_792_950);
        assert_ne!(sub_seed(1, 0), sub_seed(1, 1));
        assert_eq!(mix64(0), 0);
    }
}
