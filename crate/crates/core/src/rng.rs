//! Seeded pseudorandom streams.
//!
//! All randomness in the crate comes from ChaCha20 (`rand_chacha`), seeded
//! with `SeedableRng::seed_from_u64` and split into independent streams by
//! the ChaCha stream id. Floats are built from the top 53 bits of
//! `next_u64`, so sequences do not depend on any distribution crate.

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Debug, Clone)]
pub struct RandomStream {
    rng: ChaCha20Rng,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    /// Independent stream `stream` derived from `seed`.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box-Muller.
    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    /// Index drawn from the cumulative distribution `cdf` (last entry is
    /// the total mass).
    pub fn categorical(&mut self, cdf: &[f64]) -> usize {
        let total = *cdf.last().expect("non-empty distribution");
        let u = self.uniform() * total;
        let k = cdf.partition_point(|c| *c <= u);
        k.min(cdf.len() - 1)
    }
}
