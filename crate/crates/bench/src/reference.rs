//! Checking a report against the reference table.

use std::fmt;

use cfo_core::FunctionId;
use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};
use crate::report::ReportRow;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceRow {
    pub function_id: String,
    pub n_dims: usize,
    pub known_fmax: f64,
    pub best_fitness: f64,
    pub n_eval: u64,
    /// Where the numbers were transcribed from.
    pub source: String,
}

pub fn reference_from_json(text: &str) -> Result<Vec<ReferenceRow>> {
    serde_json::from_str(text).map_err(|e| BenchError::Usage(format!("not a reference table: {e}")))
}

/// Relative N_eval band.
pub const N_EVAL_TOLERANCE: f64 = 0.10;

/// Acceptable region for a reproduced best fitness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitnessBand {
    /// `|best - target| <= tol`.
    Within {
        target: f64,
        tol: f64,
    },
    /// `best >= -factor * |reference|`.
    NoWorseThan {
        factor: f64,
    },
    Informational,
}

pub fn fitness_band(id: FunctionId, reference: f64) -> FitnessBand {
    match id.number() {
        1 | 2 | 4 | 6 | 9 => FitnessBand::Within {
            target: 0.0,
            tol: 1e-9,
        },
        8 => FitnessBand::Within {
            target: reference,
            tol: 0.5,
        },
        14 | 16 | 17 | 18 | 19 => FitnessBand::Within {
            target: reference,
            tol: 1e-3,
        },
        20 => FitnessBand::Within {
            target: reference,
            tol: 1e-2,
        },
        21..=23 => FitnessBand::Within {
            target: reference,
            tol: 5e-2,
        },
        7 => FitnessBand::Informational,
        _ => FitnessBand::NoWorseThan { factor: 10.0 },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Informational,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Informational => "info",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowVerdict {
    pub function_id: String,
    pub fitness: Verdict,
    pub fitness_detail: String,
    pub n_eval: Verdict,
    pub n_eval_detail: String,
}

impl RowVerdict {
    pub fn failed(&self) -> bool {
        self.fitness == Verdict::Fail || self.n_eval == Verdict::Fail
    }
}

impl fmt::Display for RowVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<4} fitness {} ({})  n_eval {} ({})",
            self.function_id, self.fitness, self.fitness_detail, self.n_eval, self.n_eval_detail
        )
    }
}

pub fn judge_fitness(id: FunctionId, best: f64, reference: f64) -> (Verdict, String) {
    match fitness_band(id, reference) {
        FitnessBand::Within { target, tol } => {
            let ok = (best - target).abs() <= tol;
            (verdict(ok), format!("{best:e} vs {target:e} ± {tol:e}"))
        }
        FitnessBand::NoWorseThan { factor } => {
            let floor = -factor * reference.abs();
            (
                verdict(best >= floor),
                format!("{best:e} vs floor {floor:e}"),
            )
        }
        FitnessBand::Informational => {
            (Verdict::Informational, format!("{best:e} vs {reference:e}"))
        }
    }
}

pub fn judge_n_eval(id: FunctionId, n_eval: u64, reference: u64) -> (Verdict, String) {
    let deviation = n_eval as f64 / reference as f64 - 1.0;
    let detail = format!("{n_eval} vs {reference}, {:+.1}%", deviation * 100.0);
    if id.is_noisy() {
        (Verdict::Informational, detail)
    } else {
        let band = N_EVAL_TOLERANCE * reference as f64;
        (
            verdict((n_eval as f64 - reference as f64).abs() <= band),
            detail,
        )
    }
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// One verdict per report row, in report order. Every report row must have
/// a reference row.
pub fn compare(report: &[ReportRow], reference: &[ReferenceRow]) -> Result<Vec<RowVerdict>> {
    report
        .iter()
        .map(|row| {
            let id: FunctionId = row.function_id.parse().map_err(|_| {
                BenchError::Usage(format!("unknown function id `{}`", row.function_id))
            })?;
            let reference = reference
                .iter()
                .find(|r| r.function_id == row.function_id)
                .ok_or_else(|| BenchError::Usage(format!("no reference row for {id}")))?;
            let (fitness, fitness_detail) =
                judge_fitness(id, row.cfo_best_fitness, reference.best_fitness);
            let (n_eval, n_eval_detail) = judge_n_eval(id, row.n_eval, reference.n_eval);
            Ok(RowVerdict {
                function_id: row.function_id.clone(),
                fitness,
                fitness_detail,
                n_eval,
                n_eval_detail,
            })
        })
        .collect()
}
