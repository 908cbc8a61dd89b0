//! Per-function result rows and their JSON form.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportRow {
    pub function_id: String,
    pub n_dims: usize,
    pub known_fmax: f64,
    pub cfo_best_fitness: f64,
    pub n_eval: u64,
    pub best_probes_per_dim: usize,
    pub best_gamma: f64,
    pub last_step_best_run: usize,
    pub wall_time_seconds: f64,
}

/// Pretty-printed top-level array with a trailing newline. Floats use the
/// shortest representation that parses back to the same value.
pub fn to_json(rows: &[ReportRow]) -> String {
    let mut json = serde_json::to_string_pretty(rows).expect("report rows always serialize");
    json.push('\n');
    json
}

pub fn from_json(text: &str) -> Result<Vec<ReportRow>> {
    serde_json::from_str(text).map_err(|e| BenchError::Usage(format!("not a report: {e}")))
}

/// The same rows with every timing zeroed, for run-to-run comparison.
pub fn without_timing(rows: &[ReportRow]) -> Vec<ReportRow> {
    rows.iter()
        .map(|r| ReportRow {
            wall_time_seconds: 0.0,
            ..r.clone()
        })
        .collect()
}

pub fn summary_table(rows: &[ReportRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<4} {:>3} {:>12} {:>24} {:>10} {:>5} {:>5} {:>5} {:>8}",
        "F", "Nd", "fmax", "best fitness", "N_eval", "Np/Nd", "gamma", "last", "time(s)"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<4} {:>3} {:>12} {:>24} {:>10} {:>5} {:>5.1} {:>5} {:>8.2}",
            r.function_id,
            r.n_dims,
            format!("{}", r.known_fmax),
            format!("{:.10e}", r.cfo_best_fitness),
            r.n_eval,
            r.best_probes_per_dim,
            r.best_gamma,
            r.last_step_best_run,
            r.wall_time_seconds
        );
    }
    out
}
