//! Seeded Monte Carlo estimator over the whole space, for validation only.
//!
//! Samples t uniform on (-1,1)^N, pushes it through the whole-space map and
//! averages integrand * jacobian * 2^N. Work is split into fixed-size sample
//! blocks with per-block RNG streams and reduced in block order, so the
//! result is bit-identical regardless of how many threads participate.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::integrands::IntegrandSpec;
use crate::mapping::whole_space_map;

const BLOCK_SIZE: u64 = 65_536;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleResult {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Monte Carlo estimate of the integral of `spec` over R^N.
pub fn mc_estimate(spec: &IntegrandSpec, samples: u64, seed: u64) -> OracleResult {
    let n = spec.matrix.dimension();
    mc_estimate_fn(|x| spec.evaluate(x), n, samples, seed)
}

/// Monte Carlo estimate for an arbitrary integrand over R^N.
pub fn mc_estimate_fn<F>(f: F, dimension: usize, samples: u64, seed: u64) -> OracleResult
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let volume = (1u64 << dimension) as f64; // (-1,1)^N
    let blocks = samples.div_ceil(BLOCK_SIZE);
    let partials: Vec<(f64, f64)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let count = BLOCK_SIZE.min(samples - b * BLOCK_SIZE);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            let mut t = vec![0.0; dimension];
            for _ in 0..count {
                for ti in t.iter_mut() {
                    // resample the rare draw landing exactly on the boundary
                    *ti = loop {
                        let v: f64 = rng.gen_range(-1.0..1.0);
                        if v > -1.0 {
                            break v;
                        }
                    };
                }
                let (x, jac) = whole_space_map(&t).expect("t is interior");
                let v = f(&x) * jac * volume;
                sum += v;
                sum_sq += v * v;
            }
            (sum, sum_sq)
        })
        .collect();

    // fixed-order reduction over block index
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for (s, sq) in partials {
        sum += s;
        sum_sq += sq;
    }
    let nf = samples as f64;
    let mean = sum / nf;
    let variance = ((sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0);
    OracleResult {
        estimate: mean,
        stderr: (variance / nf).sqrt(),
        samples,
        seed,
    }
}
