//! Full pipeline driver: partition, decompose, two-pass parallel integration,
//! aggregation; plus the unpartitioned whole-space baseline.
//!
//! The two-pass scheme: a crude pass integrates every simplex to a loose
//! relative precision, locating the dominant contribution mu_max. The second
//! pass re-integrates from scratch, to the absolute target
//! `eps_abs = f_rel * mu_max / sqrt(nu)`, only those simplices whose first
//! pass error is at or above that target. Evaluations from both passes count
//! toward the reported total; discarded pass-1 grids are part of the cost.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::{enumerate_cones, pad_matrix};
use crate::cubature::{integrate_adaptive, rule_point_count, CubatureStatus};
use crate::error::RunError;
use crate::integrands::IntegrandSpec;
use crate::mapping::{mapped_eval, whole_space_map};
use crate::triangulation::{decompose_cone, SimplicialCone};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Partitioned,
    Baseline,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "partitioned" => Ok(Mode::Partitioned),
            "baseline" => Ok(Mode::Baseline),
            other => Err(format!("unknown mode '{other}' (expected partitioned or baseline)")),
        }
    }
}

/// How per-simplex errors combine into the reported sigma.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorAggregation {
    /// sqrt(sum(sigma^2) / nu) — the default.
    MeanVariance,
    /// sqrt(sum(sigma^2)), the independent-error formula, for comparison.
    SumVariance,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub spec: IntegrandSpec,
    /// Requested relative precision on the whole integral.
    pub f_rel: f64,
    /// Relative precision of the crude first pass.
    pub pass1_rel: f64,
    pub budget_per_simplex: u64,
    pub global_budget: u64,
    /// Worker threads; 0 picks the machine default.
    pub threads: usize,
    pub mode: Mode,
    pub error_aggregation: ErrorAggregation,
}

impl RunConfig {
    pub fn new(spec: IntegrandSpec, f_rel: f64, mode: Mode) -> Self {
        Self {
            spec,
            f_rel,
            pass1_rel: 0.1,
            budget_per_simplex: 100_000_000,
            global_budget: 3_000_000_000,
            threads: 0,
            mode,
            error_aggregation: ErrorAggregation::MeanVariance,
        }
    }

    pub fn validate(&self) -> Result<(), RunError> {
        if !(self.f_rel > 0.0 && self.f_rel < 1.0) {
            return Err(RunError::BadPrecision { value: self.f_rel });
        }
        if self.pass1_rel < self.f_rel {
            return Err(RunError::BadPassOrder {
                pass1: self.pass1_rel,
                requested: self.f_rel,
            });
        }
        if self.spec.beta == 0.0 {
            return Err(RunError::ZeroBeta);
        }
        Ok(())
    }
}

/// Final state of one simplex after both passes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimplexStatus {
    Converged,
    BudgetExhausted,
    RegionTooSmall,
    /// Never integrated because the global budget ran out first.
    Skipped,
}

impl From<CubatureStatus> for SimplexStatus {
    fn from(s: CubatureStatus) -> Self {
        match s {
            CubatureStatus::Converged => SimplexStatus::Converged,
            CubatureStatus::BudgetExhausted => SimplexStatus::BudgetExhausted,
            CubatureStatus::RegionTooSmall => SimplexStatus::RegionTooSmall,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimplexEstimate {
    pub simplex: usize,
    pub parent_cone: usize,
    pub mu1: f64,
    pub sigma1: f64,
    pub mu2: f64,
    pub sigma2: f64,
    pub evals_pass1: u64,
    pub evals_pass2: u64,
    pub refined: bool,
    pub status: SimplexStatus,
}

impl SimplexEstimate {
    pub fn evals(&self) -> u64 {
        self.evals_pass1 + self.evals_pass2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Converged,
    /// Some cell hit its budget or could not be split further; the result
    /// aggregates everything that was computed.
    Degraded,
    /// The global budget ran out; the report is partial.
    Aborted,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub mode: Mode,
    /// The integral estimate I.
    pub value: f64,
    /// The aggregated error sigma_I.
    pub sigma: f64,
    /// Total integrand evaluations (N_p for partitioned, N_H for baseline).
    pub n_evals: u64,
    /// Number of simplicial cones (0 in baseline mode).
    pub nu: usize,
    /// sigma / |I|, the relative precision actually reached.
    pub achieved_rel: f64,
    pub status: RunStatus,
    /// Baseline only: the budget ran out, so n_evals is a lower bound.
    pub lower_bound: bool,
    pub estimates: Vec<SimplexEstimate>,
    pub wall_time_s: f64,
}

/// Eq-style aggregation of per-simplex estimates into (I, sigma_I).
pub fn aggregate(
    estimates: &[(f64, f64)],
    nu: usize,
    aggregation: ErrorAggregation,
) -> (f64, f64) {
    let value: f64 = estimates.iter().map(|(mu, _)| mu).sum();
    let var_sum: f64 = estimates.iter().map(|(_, sigma)| sigma * sigma).sum();
    let sigma = match aggregation {
        ErrorAggregation::MeanVariance => (var_sum / nu as f64).sqrt(),
        ErrorAggregation::SumVariance => var_sum.sqrt(),
    };
    (value, sigma)
}

/// Builds the full simplicial partition for the (padded) matrix of `spec`.
pub fn build_partition(spec: &IntegrandSpec) -> Result<(IntegrandSpec, Vec<SimplicialCone>), RunError> {
    let padded = pad_matrix(&spec.matrix)?;
    let cones = enumerate_cones(&padded)?;
    let simplices: Vec<SimplicialCone> = cones
        .par_iter()
        .map(decompose_cone)
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    let spec = IntegrandSpec {
        matrix: padded,
        ..spec.clone()
    };
    Ok((spec, simplices))
}

fn thread_pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("failed to build worker pool")
}

/// Runs the partitioned pipeline under the two-pass precision controller.
pub fn run_partitioned(config: &RunConfig) -> Result<RunReport, RunError> {
    config.validate()?;
    let start = Instant::now();
    let (spec, simplices) = build_partition(&config.spec)?;
    let nu = simplices.len();
    let used_evals = AtomicU64::new(0);
    let pool = thread_pool(config.threads);

    // Pass 1: crude relative-precision sweep over every simplex.
    let pass1: Vec<Result<SimplexEstimate, RunError>> = pool.install(|| {
        simplices
            .par_iter()
            .enumerate()
            .map(|(id, simplex)| {
                if used_evals.load(Ordering::Relaxed) >= config.global_budget {
                    return Ok(skipped(id, simplex));
                }
                let f = |u: &[f64]| {
                    mapped_eval(u, simplex, |x| spec.evaluate(x)).unwrap_or(f64::NAN)
                };
                let domain = vec![(0.0, 1.0); spec.matrix.dimension()];
                let res = integrate_adaptive(
                    &f,
                    &domain,
                    0.0,
                    config.pass1_rel,
                    config.budget_per_simplex,
                )?;
                used_evals.fetch_add(res.evals, Ordering::Relaxed);
                Ok(SimplexEstimate {
                    simplex: id,
                    parent_cone: simplex.parent_cone,
                    mu1: res.value,
                    sigma1: res.error,
                    mu2: res.value,
                    sigma2: res.error,
                    evals_pass1: res.evals,
                    evals_pass2: 0,
                    refined: false,
                    status: res.status.into(),
                })
            })
            .collect()
    });
    let mut estimates: Vec<SimplexEstimate> = pass1.into_iter().collect::<Result<_, _>>()?;

    // Absolute target from the dominant pass-1 contribution.
    let mu_max = estimates
        .iter()
        .map(|e| e.mu1.abs())
        .fold(0.0f64, f64::max);
    let scale = if mu_max > 0.0 {
        mu_max
    } else {
        // all pass-1 values vanished; fall back to the worst pass-1 error
        estimates.iter().map(|e| e.sigma1).fold(0.0f64, f64::max)
    };
    let eps_abs = config.f_rel * scale / (nu as f64).sqrt();

    // Pass 2: refine from scratch wherever pass 1 was not already below target.
    if eps_abs > 0.0 {
        pool.install(|| {
            estimates
                .par_iter_mut()
                .zip(simplices.par_iter())
                .map(|(est, simplex)| {
                    if est.status == SimplexStatus::Skipped || est.sigma1 < eps_abs {
                        return Ok(());
                    }
                    if used_evals.load(Ordering::Relaxed) >= config.global_budget {
                        est.status = SimplexStatus::Skipped;
                        return Ok(());
                    }
                    let f = |u: &[f64]| {
                        mapped_eval(u, simplex, |x| spec.evaluate(x)).unwrap_or(f64::NAN)
                    };
                    let domain = vec![(0.0, 1.0); spec.matrix.dimension()];
                    let res = integrate_adaptive(
                        &f,
                        &domain,
                        eps_abs,
                        0.0,
                        config.budget_per_simplex,
                    )?;
                    used_evals.fetch_add(res.evals, Ordering::Relaxed);
                    est.mu2 = res.value;
                    est.sigma2 = res.error;
                    est.evals_pass2 = res.evals;
                    est.refined = true;
                    est.status = res.status.into();
                    Ok(())
                })
                .collect::<Result<Vec<()>, RunError>>()
        })?;
    }

    let active: Vec<(f64, f64)> = estimates
        .iter()
        .filter(|e| e.status != SimplexStatus::Skipped)
        .map(|e| (e.mu2, e.sigma2))
        .collect();
    let (value, sigma) = aggregate(&active, nu, config.error_aggregation);
    let n_evals: u64 = estimates.iter().map(|e| e.evals()).sum();
    let status = if estimates.iter().any(|e| e.status == SimplexStatus::Skipped) {
        RunStatus::Aborted
    } else if estimates.iter().any(|e| e.status != SimplexStatus::Converged) {
        RunStatus::Degraded
    } else {
        RunStatus::Converged
    };

    Ok(RunReport {
        config: config.clone(),
        mode: Mode::Partitioned,
        value,
        sigma,
        n_evals,
        nu,
        achieved_rel: relative(sigma, value),
        status,
        lower_bound: false,
        estimates,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

/// Runs the unpartitioned whole-space baseline over (-1,1)^N.
pub fn run_baseline(config: &RunConfig) -> Result<RunReport, RunError> {
    config.validate()?;
    let start = Instant::now();
    let spec = config.spec.clone();
    let f = |t: &[f64]| match whole_space_map(t) {
        Ok((x, jac)) => spec.evaluate(&x) * jac,
        Err(_) => f64::NAN,
    };
    let domain = vec![(-1.0, 1.0); spec.matrix.dimension()];
    let res = integrate_adaptive(&f, &domain, 0.0, config.f_rel, config.global_budget)?;
    let lower_bound = res.status != CubatureStatus::Converged;
    Ok(RunReport {
        config: config.clone(),
        mode: Mode::Baseline,
        value: res.value,
        sigma: res.error,
        n_evals: res.evals,
        nu: 0,
        achieved_rel: relative(res.error, res.value),
        status: if lower_bound {
            RunStatus::Degraded
        } else {
            RunStatus::Converged
        },
        lower_bound,
        estimates: Vec::new(),
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

/// Dispatches on `config.mode`.
pub fn run(config: &RunConfig) -> Result<RunReport, RunError> {
    match config.mode {
        Mode::Partitioned => run_partitioned(config),
        Mode::Baseline => run_baseline(config),
    }
}

/// Crude lower-bound cost estimate used for pre-run warnings.
pub fn estimated_min_cost(nu: usize, dimension: usize) -> u64 {
    nu as u64 * rule_point_count(dimension)
}

fn relative(sigma: f64, value: f64) -> f64 {
    if value == 0.0 {
        f64::INFINITY
    } else {
        sigma / value.abs()
    }
}

fn skipped(id: usize, simplex: &SimplicialCone) -> SimplexEstimate {
    SimplexEstimate {
        simplex: id,
        parent_cone: simplex.parent_cone,
        mu1: 0.0,
        sigma1: 0.0,
        mu2: 0.0,
        sigma2: 0.0,
        evals_pass1: 0,
        evals_pass2: 0,
        refined: false,
        status: SimplexStatus::Skipped,
    }
}
