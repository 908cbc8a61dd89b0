//! Running benchmark functions and writing their output files.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use cfo_core::{
    extract_series, function_spec, search_benchmark, DecisionSpace, FunctionId, SearchResult,
};

use crate::error::{BenchError, Result};
use crate::report::{self, ReportRow};

/// `all`, a single id, or a comma-separated list of ids.
pub fn parse_selection(text: &str) -> Result<Vec<FunctionId>> {
    if text.eq_ignore_ascii_case("all") {
        return Ok(FunctionId::all().collect());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<FunctionId>()
                .map_err(|_| BenchError::Usage(format!("unknown function id `{}`", s.trim())))
        })
        .collect()
}

/// Replacement bounds: `lo:hi` for every dimension, or one `lo:hi` per
/// dimension separated by commas.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundsOverride {
    Uniform(f64, f64),
    PerDim(Vec<(f64, f64)>),
}

impl FromStr for BoundsOverride {
    type Err = BenchError;

    fn from_str(text: &str) -> Result<Self> {
        let pair = |s: &str| -> Result<(f64, f64)> {
            let bad = || BenchError::Usage(format!("bad bounds `{s}`, expected lo:hi"));
            let (lo, hi) = s.trim().split_once(':').ok_or_else(bad)?;
            let lo = lo.trim().parse::<f64>().map_err(|_| bad())?;
            let hi = hi.trim().parse::<f64>().map_err(|_| bad())?;
            Ok((lo, hi))
        };
        let pairs = text.split(',').map(pair).collect::<Result<Vec<_>>>()?;
        match pairs.as_slice() {
            [(lo, hi)] => Ok(BoundsOverride::Uniform(*lo, *hi)),
            _ => Ok(BoundsOverride::PerDim(pairs)),
        }
    }
}

impl BoundsOverride {
    pub fn space(&self, n_dims: usize) -> Result<DecisionSpace> {
        let (min, max) = match self {
            BoundsOverride::Uniform(lo, hi) => (vec![*lo; n_dims], vec![*hi; n_dims]),
            BoundsOverride::PerDim(pairs) => {
                if pairs.len() != n_dims {
                    return Err(BenchError::Usage(format!(
                        "{} bounds given for a {n_dims}-dimensional function",
                        pairs.len()
                    )));
                }
                pairs.iter().copied().unzip()
            }
        };
        DecisionSpace::new(min, max).map_err(|e| BenchError::Usage(e.to_string()))
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub seed: u64,
    pub bounds: Option<BoundsOverride>,
}

#[derive(Debug, Clone)]
pub struct FunctionRun {
    pub row: ReportRow,
    pub result: SearchResult,
    /// The space the search started from.
    pub space: DecisionSpace,
}

pub fn run_function(id: FunctionId, options: &RunOptions) -> Result<FunctionRun> {
    let spec = function_spec(id);
    let space = match &options.bounds {
        Some(bounds) => bounds.space(spec.n_dims)?,
        None => spec.space(),
    };
    let started = Instant::now();
    let result = search_benchmark(id, options.seed, options.bounds.as_ref().map(|_| &space))?;
    let wall_time_seconds = started.elapsed().as_secs_f64();
    let row = ReportRow {
        function_id: id.to_string(),
        n_dims: spec.n_dims,
        known_fmax: spec.known_fmax,
        cfo_best_fitness: result.best_fitness,
        n_eval: result.n_eval,
        best_probes_per_dim: result.best_probes_per_dim,
        best_gamma: result.best_gamma,
        last_step_best_run: result.last_step_best_run,
        wall_time_seconds,
    };
    Ok(FunctionRun { row, result, space })
}

/// Runs every requested function in order, calling `progress` after each.
pub fn run_suite(
    ids: &[FunctionId],
    options: &RunOptions,
    mut progress: impl FnMut(&FunctionRun),
) -> Result<Vec<FunctionRun>> {
    ids.iter()
        .map(|&id| {
            let run = run_function(id, options)?;
            progress(&run);
            Ok(run)
        })
        .collect()
}

pub fn write_report(dir: &Path, rows: &[ReportRow]) -> Result<()> {
    fs::create_dir_all(dir).map_err(BenchError::io(dir))?;
    let path = dir.join("report.json");
    fs::write(&path, report::to_json(rows)).map_err(BenchError::io(&path))
}

/// Series files for the best run of one function, in `dir/<id>/`:
/// `fitness.csv`, `davg.csv` and `best_probe.csv` as `step,value`, plus
/// `trajectories.csv` as `step,probe,x1..xNd` when there are at most three
/// dimensions. Probe numbers are 1-based.
pub fn write_diagnostics(dir: &Path, run: &FunctionRun) -> Result<()> {
    let dir = dir.join(&run.row.function_id);
    fs::create_dir_all(&dir).map_err(BenchError::io(&dir))?;
    let result = &run.result;
    let series = extract_series(&result.best_run, &run.space, result.last_step_best_run)?;

    write_series(&dir.join("fitness.csv"), &series.step_best_fitness)?;
    write_series(&dir.join("davg.csv"), &series.davg)?;
    let probes: Vec<f64> = series.best_probe.iter().map(|&p| p as f64).collect();
    write_series(&dir.join("best_probe.csv"), &probes)?;

    let n_dims = result.best_run.n_dims();
    if n_dims <= 3 {
        let path = dir.join("trajectories.csv");
        write_csv(&path, |out| {
            let coords: Vec<String> = (1..=n_dims).map(|i| format!("x{i}")).collect();
            writeln!(out, "step,probe,{}", coords.join(","))?;
            for step in 0..=result.last_step_best_run {
                for probe in 0..result.best_run.n_probes() {
                    write!(out, "{step},{}", probe + 1)?;
                    for x in result.best_run.position(probe, step) {
                        write!(out, ",{x}")?;
                    }
                    writeln!(out)?;
                }
            }
            Ok(())
        })?;
    }
    Ok(())
}

fn write_series(path: &Path, values: &[f64]) -> Result<()> {
    write_csv(path, |out| {
        writeln!(out, "step,value")?;
        for (step, v) in values.iter().enumerate() {
            writeln!(out, "{step},{v}")?;
        }
        Ok(())
    })
}

fn write_csv(
    path: &Path,
    body: impl FnOnce(&mut BufWriter<fs::File>) -> std::io::Result<()>,
) -> Result<()> {
    let file = fs::File::create(path).map_err(BenchError::io(path))?;
    let mut out = BufWriter::new(file);
    body(&mut out)
        .and_then(|_| out.flush())
        .map_err(BenchError::io(path))
}
