//! Per-step series extracted from a finished run: best fitness, best probe
//! and the normalized average distance of the swarm to the best point.

use crate::engine::{best_so_far, step_best};
use crate::error::{CfoError, Result};
use crate::model::{DecisionSpace, RunMatrices};

#[derive(Debug, Clone, PartialEq)]
pub struct RunDiagnostics {
    /// Best fitness among the probes at each step.
    pub step_best_fitness: Vec<f64>,
    /// Best fitness through each step (running maximum).
    pub cumulative_best_fitness: Vec<f64>,
    /// 1-based index of the best probe at each step.
    pub best_probe: Vec<usize>,
    pub davg: Vec<f64>,
    pub last_step: usize,
}

/// Sum of distances from every probe at step `step` to the best point seen
/// through that step, divided by `(N_p - 1)` times the starting diagonal.
pub fn davg_at_step(run: &RunMatrices, space: &DecisionSpace, step: usize) -> Result<f64> {
    let n_probes = run.n_probes();
    if n_probes < 2 {
        return Err(CfoError::TooFewProbes(n_probes));
    }
    let best = best_so_far(run, step)?;
    let total: f64 = (0..n_probes)
        .map(|p| {
            run.position(p, step)
                .iter()
                .zip(&best.position)
                .map(|(x, b)| (b - x) * (b - x))
                .sum::<f64>()
                .sqrt()
        })
        .sum();
    Ok(total / (space.diagonal_length() * (n_probes - 1) as f64))
}

/// All three series for steps `0..=last_step`.
pub fn extract_series(
    run: &RunMatrices,
    space: &DecisionSpace,
    last_step: usize,
) -> Result<RunDiagnostics> {
    let mut diagnostics = RunDiagnostics {
        step_best_fitness: Vec::with_capacity(last_step + 1),
        cumulative_best_fitness: Vec::with_capacity(last_step + 1),
        best_probe: Vec::with_capacity(last_step + 1),
        davg: Vec::with_capacity(last_step + 1),
        last_step,
    };
    let mut running = f64::NEG_INFINITY;
    for step in 0..=last_step {
        if run.last_evaluated_step().is_none_or(|last| step > last) {
            return Err(CfoError::StepNotEvaluated {
                step,
                last: run.last_evaluated_step().unwrap_or(0),
            });
        }
        let (fitness, probe) = step_best(run.fitness_row(step));
        running = if step == 0 {
            fitness
        } else {
            running.max(fitness)
        };
        diagnostics.step_best_fitness.push(fitness);
        diagnostics.cumulative_best_fitness.push(running);
        diagnostics.best_probe.push(probe + 1);
        diagnostics.davg.push(davg_at_step(run, space, step)?);
    }
    Ok(diagnostics)
}
