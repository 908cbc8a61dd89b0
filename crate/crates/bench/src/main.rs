use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cfo_bench::{
    compare, from_json, parse_selection, reference_from_json, run_suite, summary_table,
    write_diagnostics, write_report, BenchError, BoundsOverride, RunOptions,
};
use cfo_core::NoiseSource;

#[derive(Parser)]
#[command(
    name = "cfo-bench",
    version,
    about = "Parameter-free Central Force Optimization benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search one or more benchmark functions and write report.json.
    Run {
        /// `all`, an id such as F18, or a comma-separated list of ids.
        functions: String,
        /// Seed for the noisy function's generator.
        #[arg(long, default_value_t = NoiseSource::DEFAULT_SEED)]
        seed: u64,
        /// `lo:hi` for every dimension, or `lo1:hi1,lo2:hi2,...`.
        #[arg(long, allow_hyphen_values = true)]
        override_bounds: Option<String>,
        #[arg(long, default_value = "cfo-out")]
        out: PathBuf,
        /// Also write per-step CSV series for each function's best run.
        #[arg(long)]
        emit_diagnostics: bool,
    },
    /// Check a report against a reference table.
    Compare { report: PathBuf, reference: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run {
            functions,
            seed,
            override_bounds,
            out,
            emit_diagnostics,
        } => run(
            &functions,
            seed,
            override_bounds.as_deref(),
            &out,
            emit_diagnostics,
        ),
        Command::Compare { report, reference } => compare_files(&report, &reference),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cfo-bench: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(
    functions: &str,
    seed: u64,
    bounds: Option<&str>,
    out: &std::path::Path,
    diagnostics: bool,
) -> Result<(), BenchError> {
    let ids = parse_selection(functions)?;
    let bounds = bounds.map(str::parse::<BoundsOverride>).transpose()?;
    if let Some(bounds) = &bounds {
        for id in &ids {
            bounds.space(cfo_core::function_spec(*id).n_dims)?;
        }
    }
    let options = RunOptions { seed, bounds };
    let runs = run_suite(&ids, &options, |run| {
        eprintln!(
            "{}: {:e} in {} evaluations ({:.1}s)",
            run.row.function_id,
            run.row.cfo_best_fitness,
            run.row.n_eval,
            run.row.wall_time_seconds
        );
        if diagnostics {
            if let Err(e) = write_diagnostics(out, run) {
                eprintln!("cfo-bench: {e}");
            }
        }
    })?;
    let rows: Vec<_> = runs.into_iter().map(|r| r.row).collect();
    write_report(out, &rows)?;
    print!("{}", summary_table(&rows));
    Ok(())
}

fn compare_files(report: &std::path::Path, reference: &std::path::Path) -> Result<(), BenchError> {
    let read = |path: &std::path::Path| {
        std::fs::read_to_string(path)
            .map_err(|e| BenchError::Usage(format!("{}: {e}", path.display())))
    };
    let report = from_json(&read(report)?)?;
    let reference = reference_from_json(&read(reference)?)?;
    let verdicts = compare(&report, &reference)?;
    for v in &verdicts {
        println!("{v}");
    }
    let failed = verdicts.iter().filter(|v| v.failed()).count();
    if failed > 0 {
        return Err(BenchError::Tolerance(failed));
    }
    Ok(())
}
