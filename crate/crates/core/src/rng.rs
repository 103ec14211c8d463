//! Seeded, splittable random number generation.
//!
//! Every stochastic operation draws from an [`RngHandle`], a ChaCha20 stream
//! cipher keyed by a 64-bit seed and positioned on a 64-bit stream id. ChaCha20
//! is a counter-based generator with a fixed published definition, so a given
//! `(seed, stream)` pair produces the same sequence on every platform.
//!
//! The seed is expanded into the 256-bit ChaCha key with the PCG32 expansion
//! used by `rand_core::SeedableRng::seed_from_u64`. Child handles for parallel
//! work are derived with [`RngHandle::split`].

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

#[derive(Debug, Clone)]
pub struct RngHandle {
    seed: u64,
    stream: u64,
    inner: ChaCha20Rng,
}

impl RngHandle {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha20Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self {
            seed,
            stream,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Derives an independent handle for sub-task `index`.
    ///
    /// The child key is `splitmix64(seed ^ splitmix64(stream))` and its stream
    /// id is `index`, so children depend only on the parent's identity and
    /// never on how much of the parent sequence has been consumed.
    pub fn split(&self, index: u64) -> RngHandle {
        RngHandle::new(splitmix64(self.seed ^ splitmix64(self.stream)), index)
    }
}

impl RngCore for RngHandle {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
