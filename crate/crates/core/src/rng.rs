//! Seedable random streams.
//!
//! Every stochastic operator draws through [`RngStream`], so a run is fully
//! determined by its seed and tests can substitute scripted draws.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use sha2::{Digest, Sha256};

pub trait RngStream {
    /// Uniform draw on `[0, 1)`.
    fn uniform(&mut self) -> f64;

    /// Uniform integer draw on `0..n`. `n` must be positive.
    fn below(&mut self, n: usize) -> usize;

    /// Standard normal draw.
    fn gaussian(&mut self) -> f64;

    /// Uniform draw on `[lo, hi)`.
    fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }
}

/// ChaCha8-backed stream; the byte stream for a given seed is stable across
/// platforms and crate versions.
#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self { inner: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl RngStream for SeededRng {
    fn uniform(&mut self) -> f64 {
        self.inner.gen::<f64>()
    }

    fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "below() needs a non-empty range");
        self.inner.gen_range(0..n)
    }

    fn gaussian(&mut self) -> f64 {
        self.inner.sample(StandardNormal)
    }
}

/// Derives a per-run seed from a base seed and a textual run key, e.g.
/// `("mdbo", "F15", 3)`. Stable across builds (SHA-256 based).
pub fn derive_seed(base: u64, algorithm: &str, benchmark: &str, run: usize) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(algorithm.as_bytes());
    hasher.update([0u8]);
    hasher.update(benchmark.as_bytes());
    hasher.update([0u8]);
    hasher.update((run as u64).to_le_bytes());
    let digest = hasher.finalize();
    let mut word = [0u8; 8];
    word.copy_from_slice(&digest[..8]);
    base ^ u64::from_le_bytes(word)
}
