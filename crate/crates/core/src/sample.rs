//! Deterministic seeded sampling used by every checker.
//!
//! All randomness flows through [`SampleStream`], a ChaCha8 generator keyed
//! by the check's seed plus a per-context tag. Reports echo the seed, so a
//! re-run with identical parameters replays the identical sample sequence.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::vector::Vector;

/// Seeded stream of reproducible samples.
pub struct SampleStream {
    rng: ChaCha8Rng,
}

impl SampleStream {
    /// `tag` separates the streams of independent checks running under the
    /// same seed (one stream per axiom, per direction pool, and so on).
    pub fn new(seed: u64, tag: u64) -> Self {
        SampleStream {
            rng: ChaCha8Rng::seed_from_u64(seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15)),
        }
    }

    /// Uniform draw from [0, 1).
    pub fn unit_f64(&mut self) -> f64 {
        // 53 mantissa bits of the raw output; bit-stable across platforms.
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit_f64()
    }

    /// Uniform draw from the closed interval [0, 1] (endpoints reachable
    /// through the grid probes, not this call; the open draw is fine here).
    pub fn unit_interval(&mut self) -> f64 {
        self.unit_f64()
    }

    pub fn index(&mut self, len: usize) -> usize {
        (self.rng.next_u64() % len as u64) as usize
    }

    pub fn sign(&mut self) -> f64 {
        if self.rng.next_u64() & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Dyadic rational m / 2^denom_pow with |m| <= max_num. Exactly
    /// representable, which keeps difference quotients of linear maps exact.
    pub fn dyadic(&mut self, denom_pow: u32, max_num: i64) -> f64 {
        let span = (2 * max_num + 1) as u64;
        let m = (self.rng.next_u64() % span) as i64 - max_num;
        m as f64 / (1u64 << denom_pow) as f64
    }

    pub fn vector(&mut self, dim: usize, lo: f64, hi: f64) -> Vector {
        let entries = (0..dim).map(|_| self.uniform(lo, hi)).collect();
        Vector::new(entries).expect("uniform entries are finite")
    }

    /// Random vector bounded away from the null vector (max-norm >= floor),
    /// so strict membership checks stay well-posed.
    pub fn nonnull_vector(&mut self, dim: usize, lo: f64, hi: f64, floor: f64) -> Vector {
        loop {
            let v = self.vector(dim, lo, hi);
            if v.entries().iter().any(|e| e.abs() >= floor) {
                return v;
            }
        }
    }

    /// Dyadic vector with entries m/2^8, |m| <= 256.
    pub fn dyadic_vector(&mut self, dim: usize) -> Vector {
        let entries = (0..dim).map(|_| self.dyadic(8, 256)).collect();
        Vector::new(entries).expect("dyadic entries are finite")
    }

    /// Unit vector in the max norm with dyadic entries: every coordinate is
    /// m/256 and one seeded coordinate is forced to +-1. Exact representation
    /// keeps linear-map difference quotients exactly zero in floating point.
    pub fn direction(&mut self, dim: usize) -> Vector {
        let mut entries: Vec<f64> = (0..dim).map(|_| self.dyadic(8, 255)).collect();
        let pivot = self.index(dim);
        entries[pivot] = self.sign();
        Vector::new(entries).expect("direction entries are finite")
    }

    /// Nonzero scalar from [-10, 10] with |c| >= 0.01.
    pub fn nonzero_scalar(&mut self) -> f64 {
        loop {
            let c = self.uniform(-10.0, 10.0);
            if c.abs() >= 0.01 {
                return c;
            }
        }
    }

    /// Positive time drawn log-uniformly from [0.01, 100].
    pub fn positive_time(&mut self) -> f64 {
        10f64.powf(self.uniform(-2.0, 2.0))
    }
}
