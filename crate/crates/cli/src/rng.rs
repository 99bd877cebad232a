//! Seeded, splittable random streams.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed used when none is given on the command line, in a config file or in
/// `DPPLAB_SEED`.
pub const DEFAULT_SEED: u64 = 0xD5EED;

/// Generator owned by one replica.
///
/// Streams share the ChaCha key derived from the seed and differ in the
/// stream id, so every `(seed, index)` pair addresses a disjoint keystream.
#[derive(Debug, Clone)]
pub struct RandomState {
    rng: ChaCha8Rng,
}

impl RandomState {
    /// Stream 0 of `seed`.
    pub fn new(seed: u64) -> Self {
        derive_substream(seed, 0)
    }

    /// The underlying generator.
    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

impl RngCore for RandomState {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }
}

/// Independent stream `index` of `seed`.
pub fn derive_substream(seed: u64, index: u32) -> RandomState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(index));
    RandomState { rng }
}

/// Stream reserved for setup work (random frames, random instances) so that
/// replica streams `0..k` stay untouched.
pub fn setup_stream(seed: u64) -> RandomState {
    derive_substream(seed, u32::MAX)
}
