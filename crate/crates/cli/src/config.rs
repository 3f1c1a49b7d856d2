//! Run configuration: a TOML key-value file merged with command-line flags.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use conequad::{DiscontinuityMatrix, Family, IntegrandSpec, Mode, RunConfig};
use conequad::orchestrator::ErrorAggregation;

/// Keys accepted in the config file. Flags override file values.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    /// Registry name ("C3x2" .. "C9x5") or path to a matrix file.
    pub matrix: Option<String>,
    /// "F1" or "F2".
    pub family: Option<String>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub f_rel: Option<f64>,
    pub pass1_rel: Option<f64>,
    /// "partitioned" or "baseline".
    pub mode: Option<String>,
    pub budget_per_simplex: Option<u64>,
    pub global_budget: Option<u64>,
    pub threads: Option<usize>,
    /// "mean_variance" (default) or "sum_variance".
    pub error_aggregation: Option<String>,
    pub out: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        toml::from_str(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
    }
}

/// Flag-level overrides collected by the CLI.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub matrix: Option<String>,
    pub family: Option<String>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub f_rel: Option<f64>,
    pub pass1_rel: Option<f64>,
    pub mode: Option<String>,
    pub global_budget: Option<u64>,
    pub budget_per_simplex: Option<u64>,
    pub threads: Option<usize>,
    pub out: Option<String>,
}

pub struct ResolvedConfig {
    pub run: RunConfig,
    pub out: String,
}

/// Loads the named matrix from the registry or from a file on disk.
pub fn resolve_matrix(name: &str) -> Result<DiscontinuityMatrix> {
    if let Some(matrix) = conequad::registry::builtin(name) {
        return Ok(matrix);
    }
    let path = Path::new(name);
    if !path.exists() {
        bail!(
            "matrix '{name}' is neither a registry name ({}) nor an existing file",
            conequad::registry::ALL_NAMES.join(", ")
        );
    }
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read matrix file {}", path.display()))?;
    DiscontinuityMatrix::from_text(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Merges file values and flag overrides into a validated run configuration.
pub fn resolve(file: FileConfig, flags: Overrides) -> Result<ResolvedConfig> {
    let matrix_name = flags
        .matrix
        .or(file.matrix)
        .ok_or_else(|| anyhow!("missing field 'matrix' (config key or --matrix)"))?;
    let matrix = resolve_matrix(&matrix_name)?;

    let family: Family = flags
        .family
        .or(file.family)
        .unwrap_or_else(|| "F1".into())
        .parse()
        .map_err(|e: String| anyhow!("field 'family': {e}"))?;
    let alpha = flags.alpha.or(file.alpha).unwrap_or(-0.2);
    let beta = flags.beta.or(file.beta).unwrap_or(0.1);
    let mode: Mode = flags
        .mode
        .or(file.mode)
        .unwrap_or_else(|| "partitioned".into())
        .parse()
        .map_err(|e: String| anyhow!("field 'mode': {e}"))?;

    let spec = IntegrandSpec::new(family, alpha, beta, matrix)
        .map_err(|e| anyhow!("field 'beta': {e}"))?;
    let f_rel = flags.f_rel.or(file.f_rel).unwrap_or(1e-3);
    let mut run = RunConfig::new(spec, f_rel, mode);
    if let Some(p1) = flags.pass1_rel.or(file.pass1_rel) {
        run.pass1_rel = p1;
    }
    if let Some(b) = flags.budget_per_simplex.or(file.budget_per_simplex) {
        run.budget_per_simplex = b;
    }
    if let Some(b) = flags.global_budget.or(file.global_budget) {
        run.global_budget = b;
    }
    if let Some(t) = flags.threads.or(file.threads) {
        run.threads = t;
    }
    if let Some(agg) = file.error_aggregation.as_deref() {
        run.error_aggregation = match agg {
            "mean_variance" => ErrorAggregation::MeanVariance,
            "sum_variance" => ErrorAggregation::SumVariance,
            other => bail!("field 'error_aggregation': unknown value '{other}'"),
        };
    }
    run.validate()
        .map_err(|e| anyhow!("invalid run configuration: {e}"))?;
    let out = flags.out.or(file.out).unwrap_or_else(|| "report".into());
    Ok(ResolvedConfig { run, out })
}
