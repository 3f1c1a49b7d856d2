//! Report serialization: JSON for the full run record, CSV rows shaped like
//! the benchmark tables.

use crate::orchestrator::{Mode, RunReport};

/// Full report as pretty JSON; embeds the resolved configuration so a run
/// can be reproduced from its own report.
pub fn to_json(report: &RunReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn from_json(text: &str) -> Result<RunReport, serde_json::Error> {
    serde_json::from_str(text)
}

pub const RUN_CSV_HEADER: &str = "N,M,mode,f_rel,evals,value,sigma,achieved_rel,status";

/// One CSV row for a single run: evals is N_p in partitioned mode, N_H in
/// baseline mode.
pub fn run_csv_row(report: &RunReport) -> String {
    let m = report.config.spec.matrix.original_row_count();
    let n = report.config.spec.matrix.dimension();
    let mode = match report.mode {
        Mode::Partitioned => "partitioned",
        Mode::Baseline => "baseline",
    };
    let evals = if report.lower_bound {
        format!(">{}", report.n_evals)
    } else {
        report.n_evals.to_string()
    };
    format!(
        "{n},{m},{mode},{:.3e},{evals},{:.12e},{:.6e},{:.3e},{:?}",
        report.config.f_rel, report.value, report.sigma, report.achieved_rel, report.status
    )
}

/// One comparison row in the shape of the benchmark tables.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub n: usize,
    pub m: usize,
    pub matrix: String,
    pub n_p: u64,
    /// Relative precision actually reached by the partitioned run.
    pub eps_star_rel: f64,
    pub n_h: u64,
    /// The baseline hit its budget, so n_h is a lower bound.
    pub n_h_lower_bound: bool,
    pub value_partitioned: f64,
    pub value_baseline: f64,
}

pub const TABLE_CSV_HEADER: &str = "N,M,N_p,eps_star_rel,N_H,ratio_NH_over_Np";

impl TableRow {
    /// The headline speed-up metric N_H / N_p, a lower bound when the
    /// baseline was capped.
    pub fn ratio(&self) -> f64 {
        self.n_h as f64 / self.n_p as f64
    }

    pub fn csv_row(&self) -> String {
        let nh = if self.n_h_lower_bound {
            format!(">{}", self.n_h)
        } else {
            self.n_h.to_string()
        };
        let ratio = if self.n_h_lower_bound {
            format!(">{:.1}", self.ratio())
        } else {
            format!("{:.1}", self.ratio())
        };
        format!(
            "{},{},{},{:.2e},{nh},{ratio}",
            self.n, self.m, self.n_p, self.eps_star_rel
        )
    }
}
