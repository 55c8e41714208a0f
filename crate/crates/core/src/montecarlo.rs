//! Deterministic, shard-independent Monte Carlo over 4-dimensional boxes.
//!
//! Samples are drawn in fixed-size blocks; block `b` uses a ChaCha8 stream
//! `b` keyed by the scenario seed, so results do not depend on how many
//! threads evaluate the blocks. Block sums are reduced in block order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const BLOCK_SIZE: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampler {
    pub seed: u64,
    pub n_samples: usize,
}

impl Sampler {
    pub fn new(seed: u64, n_samples: usize) -> Self {
        Self { seed, n_samples }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

impl Estimate {
    pub const ZERO: Estimate = Estimate {
        value: 0.0,
        std_error: 0.0,
    };

    pub fn scaled(self, k: f64) -> Self {
        Estimate {
            value: self.value * k,
            std_error: self.std_error * k.abs(),
        }
    }

    /// Number of combined standard errors separating two estimates.
    pub fn z_score(&self, other: &Estimate) -> f64 {
        let combined = (self.std_error.powi(2) + other.std_error.powi(2)).sqrt();
        let diff = (self.value - other.value).abs();
        if combined == 0.0 {
            if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            diff / combined
        }
    }
}

/// Axis-aligned box `[lo, hi]` per coordinate.
pub type Bounds4 = [(f64, f64); 4];

#[derive(Debug, Clone, PartialEq)]
pub struct BoxIntegral<const K: usize> {
    pub estimates: [Estimate; K],
    pub accepted: usize,
    pub n_samples: usize,
}

#[derive(Clone, Copy)]
struct Block<const K: usize> {
    sum: [f64; K],
    sum_sq: [f64; K],
    accepted: usize,
}

/// Estimates `∫ f_k dV` over `bounds` for `K` integrands at once. `f` returns
/// `None` for points outside the region.
pub fn integrate_box<const K: usize, F>(
    bounds: &Bounds4,
    sampler: Sampler,
    f: F,
) -> Result<BoxIntegral<K>>
where
    F: Fn(&[f64; 4]) -> Result<Option<[f64; K]>> + Sync,
{
    if sampler.n_samples == 0 {
        return Err(Error::InvalidInput("n_samples must be positive".into()));
    }
    for (lo, hi) in bounds {
        if !(lo.is_finite() && hi.is_finite() && hi >= lo) {
            return Err(Error::InvalidInput(format!("invalid sampling box {bounds:?}")));
        }
    }
    let box_volume: f64 = bounds.iter().map(|(lo, hi)| hi - lo).product();
    let n_blocks = sampler.n_samples.div_ceil(BLOCK_SIZE);

    let blocks: Vec<Block<K>> = (0..n_blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(sampler.seed);
            rng.set_stream(b as u64);
            let count = BLOCK_SIZE.min(sampler.n_samples - b * BLOCK_SIZE);
            let mut block = Block {
                sum: [0.0; K],
                sum_sq: [0.0; K],
                accepted: 0,
            };
            for _ in 0..count {
                let x: [f64; 4] =
                    std::array::from_fn(|i| bounds[i].0 + (bounds[i].1 - bounds[i].0) * rng.gen::<f64>());
                if let Some(values) = f(&x)? {
                    block.accepted += 1;
                    for k in 0..K {
                        block.sum[k] += values[k];
                        block.sum_sq[k] += values[k] * values[k];
                    }
                }
            }
            Ok(block)
        })
        .collect::<Result<_>>()?;

    let n = sampler.n_samples as f64;
    let mut sum = [0.0; K];
    let mut sum_sq = [0.0; K];
    let mut accepted = 0;
    for block in &blocks {
        accepted += block.accepted;
        for k in 0..K {
            sum[k] += block.sum[k];
            sum_sq[k] += block.sum_sq[k];
        }
    }
    let estimates = std::array::from_fn(|k| {
        let mean = sum[k] / n;
        let var = (sum_sq[k] / n - mean * mean).max(0.0);
        let std = if sampler.n_samples > 1 {
            (var * n / (n - 1.0) / n).sqrt()
        } else {
            0.0
        };
        Estimate {
            value: mean * box_volume,
            std_error: std * box_volume,
        }
    });
    Ok(BoxIntegral {
        estimates,
        accepted,
        n_samples: sampler.n_samples,
    })
}
