//! Command-line front end: run configuration, execution, report emission.

mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};

use conequad::orchestrator::{self, estimated_min_cost, Mode, RunReport, RunStatus};
use conequad::report::{self, TableRow, RUN_CSV_HEADER, TABLE_CSV_HEADER};
use conequad::{
    build_partition_dump, mc_estimate, Family, IntegrandSpec, RunConfig,
};

use config::{resolve, resolve_matrix, FileConfig, Overrides};

#[derive(Parser)]
#[command(
    name = "conequad",
    about = "Integrates functions with central hyperplane discontinuities over R^N \
             by partitioning space into simplicial cones",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a configured integration run and write JSON + CSV reports.
    Run(RunArgs),
    /// Monte Carlo validation estimate of the same integral.
    Oracle(OracleArgs),
    /// Dump the cone partition and simplex tuples of a matrix.
    PartitionDump(PartitionDumpArgs),
    /// Reproduce the benchmark table layout over a suite of matrices.
    TableRepro(TableReproArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Registry name (C3x2 .. C9x5) or matrix file path.
    #[arg(long)]
    matrix: Option<String>,
    /// Integrand family: F1 or F2.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// Requested relative precision f.
    #[arg(long)]
    frel: Option<f64>,
    /// Crude first-pass relative precision (default 0.1).
    #[arg(long)]
    pass1_rel: Option<f64>,
    /// partitioned or baseline.
    #[arg(long)]
    mode: Option<String>,
    /// Global evaluation budget (default 3e9).
    #[arg(long)]
    budget: Option<u64>,
    /// Per-simplex evaluation budget (default 1e8).
    #[arg(long)]
    budget_per_simplex: Option<u64>,
    /// Worker threads; 0 = automatic.
    #[arg(long)]
    threads: Option<usize>,
    /// Output path prefix for <out>.json and <out>.csv (default "report").
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    matrix: String,
    #[arg(long, default_value = "F1")]
    family: String,
    #[arg(long, default_value_t = -0.2)]
    alpha: f64,
    #[arg(long, default_value_t = 0.1)]
    beta: f64,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output JSON file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PartitionDumpArgs {
    #[arg(long)]
    matrix: String,
    /// Output text file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableReproArgs {
    /// f1_desk or f2_desk.
    #[arg(long)]
    suite: String,
    /// Requested relative precision per row.
    #[arg(long, default_value_t = 1e-3)]
    frel: f64,
    /// Evaluation budget per row and mode.
    #[arg(long, default_value_t = 100_000_000)]
    budget: u64,
    #[arg(long)]
    budget_per_simplex: Option<u64>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Output CSV file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Oracle(args) => cmd_oracle(args).map(|()| ExitCode::SUCCESS),
        Command::PartitionDump(args) => cmd_partition_dump(args).map(|()| ExitCode::SUCCESS),
        Command::TableRepro(args) => cmd_table_repro(args).map(|()| ExitCode::SUCCESS),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn cmd_run(args: RunArgs) -> Result<ExitCode> {
    let file = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let flags = Overrides {
        matrix: args.matrix,
        family: args.family,
        alpha: args.alpha,
        beta: args.beta,
        f_rel: args.frel,
        pass1_rel: args.pass1_rel,
        mode: args.mode,
        global_budget: args.budget,
        budget_per_simplex: args.budget_per_simplex,
        threads: args.threads,
        out: args.out,
    };
    let resolved = resolve(file, flags)?;
    warn_if_expensive(&resolved.run);

    let report = orchestrator::run(&resolved.run).map_err(|e| anyhow!("run failed: {e}"))?;
    write_reports(&report, &resolved.out)?;
    print_summary(&report);
    Ok(match report.status {
        RunStatus::Converged => ExitCode::SUCCESS,
        RunStatus::Degraded | RunStatus::Aborted => ExitCode::from(2),
    })
}

/// Crude pre-run cost warning: at least one rule application per simplex,
/// scaled by a dimensional refinement guess of (1/f)^(N/2).
fn warn_if_expensive(config: &RunConfig) {
    if config.mode != Mode::Partitioned {
        return;
    }
    let Ok((_, simplices)) = orchestrator::build_partition(&config.spec) else {
        return;
    };
    let n = config.spec.matrix.dimension();
    let floor = estimated_min_cost(simplices.len(), n);
    let guess = floor as f64 * (1.0 / config.f_rel).powf((n as f64 - 1.0) / 2.0);
    if guess > config.global_budget as f64 {
        eprintln!(
            "warning: estimated cost ~{guess:.1e} evaluations exceeds the global budget {}; \
             expect an aborted or degraded run (consider a larger --budget or smaller f)",
            config.global_budget
        );
    }
}

fn write_reports(report: &RunReport, out: &str) -> Result<()> {
    let json_path = format!("{out}.json");
    let csv_path = format!("{out}.csv");
    std::fs::write(&json_path, report::to_json(report))
        .with_context(|| format!("cannot write {json_path}"))?;
    let mut csv = String::from(RUN_CSV_HEADER);
    csv.push('\n');
    csv.push_str(&report::run_csv_row(report));
    csv.push('\n');
    std::fs::write(&csv_path, csv).with_context(|| format!("cannot write {csv_path}"))?;
    Ok(())
}

fn print_summary(report: &RunReport) {
    let label = match report.mode {
        Mode::Partitioned => "N_p",
        Mode::Baseline => "N_H",
    };
    let evals = if report.lower_bound {
        format!(">{}", report.n_evals)
    } else {
        report.n_evals.to_string()
    };
    println!(
        "I = {:.12e}  sigma_I = {:.6e}  (eps*_rel = {:.3e})",
        report.value, report.sigma, report.achieved_rel
    );
    println!(
        "{label} = {evals}  nu = {}  status = {:?}  wall = {:.2}s",
        report.nu, report.status, report.wall_time_s
    );
}

fn cmd_oracle(args: OracleArgs) -> Result<()> {
    let matrix = resolve_matrix(&args.matrix)?;
    let family: Family = args.family.parse().map_err(|e: String| anyhow!(e))?;
    let spec = IntegrandSpec::new(family, args.alpha, args.beta, matrix)
        .map_err(|e| anyhow!("{e}"))?;
    let result = mc_estimate(&spec, args.samples, args.seed);
    let json = serde_json::to_string_pretty(&result)?;
    match args.out {
        Some(path) => std::fs::write(&path, json)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => println!("{json}"),
    }
    Ok(())
}

fn cmd_partition_dump(args: PartitionDumpArgs) -> Result<()> {
    let matrix = resolve_matrix(&args.matrix)?;
    let dump = build_partition_dump(&matrix).map_err(|e| anyhow!("{e}"))?;
    match args.out {
        Some(path) => std::fs::write(&path, dump)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{dump}"),
    }
    Ok(())
}

fn cmd_table_repro(args: TableReproArgs) -> Result<()> {
    let family: Family = match args.suite.as_str() {
        "f1_desk" => Family::F1,
        "f2_desk" => Family::F2,
        other => return Err(anyhow!("unknown suite '{other}' (expected f1_desk or f2_desk)")),
    };
    let mut out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(
            std::fs::File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?,
        ),
        None => Box::new(std::io::stdout()),
    };
    writeln!(out, "{TABLE_CSV_HEADER}")?;

    for name in conequad::registry::ALL_NAMES {
        let matrix = conequad::registry::builtin(name).expect("registry name");
        let n = matrix.dimension();
        let m = matrix.row_count();
        let spec = IntegrandSpec::new(family, -0.2, 0.1, matrix).map_err(|e| anyhow!("{e}"))?;
        let mut cfg = RunConfig::new(spec, args.frel, Mode::Partitioned);
        cfg.global_budget = args.budget;
        cfg.budget_per_simplex = args
            .budget_per_simplex
            .unwrap_or(args.budget)
            .min(args.budget);
        cfg.threads = args.threads;

        // skip rows whose estimated cost cannot fit the budget
        let (_, simplices) = orchestrator::build_partition(&cfg.spec)
            .map_err(|e| anyhow!("partitioning {name} failed: {e}"))?;
        let guess =
            estimated_min_cost(simplices.len(), n) as f64 * (1.0 / args.frel).powf((n as f64 - 1.0) / 2.0);
        if guess > args.budget as f64 {
            eprintln!(
                "skipping {name}: estimated cost ~{guess:.1e} exceeds budget {}",
                args.budget
            );
            continue;
        }

        let partitioned =
            orchestrator::run_partitioned(&cfg).map_err(|e| anyhow!("{name} partitioned: {e}"))?;
        cfg.mode = Mode::Baseline;
        let baseline =
            orchestrator::run_baseline(&cfg).map_err(|e| anyhow!("{name} baseline: {e}"))?;

        let row = TableRow {
            n,
            m,
            matrix: name.to_string(),
            n_p: partitioned.n_evals,
            eps_star_rel: partitioned.achieved_rel,
            n_h: baseline.n_evals,
            n_h_lower_bound: baseline.lower_bound,
            value_partitioned: partitioned.value,
            value_baseline: baseline.value,
        };
        writeln!(out, "{}", row.csv_row())?;
    }
    Ok(())
}
