//! Seeded random stream used for initialization and the per-move noise vector.
//!
//! The generator is ChaCha8 (counter-based, platform independent output) seeded
//! from a `u64`. Gaussian components come from `rand_distr::StandardNormal`
//! (ziggurat), uniform components are drawn on `[-0.5, 0.5)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::params::NoiseKind;

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of 32-bit words consumed so far.
    pub fn word_pos(&self) -> u128 {
        self.inner.get_word_pos()
    }

    /// Uniform draw on `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.inner.random::<f64>()
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.inner.sample(StandardNormal)
    }

    /// Overwrites `out` with one noise vector of the requested kind.
    pub fn fill_noise(&mut self, kind: NoiseKind, out: &mut [f64]) {
        match kind {
            NoiseKind::Gaussian => {
                for v in out.iter_mut() {
                    *v = self.standard_normal();
                }
            }
            NoiseKind::UniformSymmetric => {
                for v in out.iter_mut() {
                    *v = self.uniform(-0.5, 0.5);
                }
            }
        }
    }

    pub fn noise(&mut self, kind: NoiseKind, dim: usize) -> Vec<f64> {
        let mut v = vec![0.0; dim];
        self.fill_noise(kind, &mut v);
        v
    }
}
