//! Shared data types: decision spaces, run histories, hardwired parameters
//! and search results. Nothing in here runs the algorithm.
//!
//! Probe and dimension indices are 0-based throughout the crate. Anything
//! written for humans (reports, CSV files) converts to 1-based labels.

use crate::error::{CfoError, Result};

/// Axis-aligned box `min[i] <= x[i] <= max[i]`.
///
/// The current bounds shrink during a run; the starting bounds are frozen at
/// construction and used both for resets and for the principal-diagonal
/// length.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionSpace {
    min: Vec<f64>,
    max: Vec<f64>,
    starting_min: Vec<f64>,
    starting_max: Vec<f64>,
}

impl DecisionSpace {
    pub fn new(min: Vec<f64>, max: Vec<f64>) -> Result<Self> {
        if min.len() != max.len() {
            return Err(CfoError::BoundsLengthMismatch {
                min_len: min.len(),
                max_len: max.len(),
            });
        }
        if min.is_empty() {
            return Err(CfoError::EmptySpace);
        }
        check_bounds(&min, &max)?;
        Ok(Self {
            starting_min: min.clone(),
            starting_max: max.clone(),
            min,
            max,
        })
    }

    /// The same interval `[lo, hi]` on every one of `n_dims` axes.
    pub fn uniform(n_dims: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; n_dims], vec![hi; n_dims])
    }

    pub fn n_dims(&self) -> usize {
        self.min.len()
    }

    pub fn min(&self) -> &[f64] {
        &self.min
    }

    pub fn max(&self) -> &[f64] {
        &self.max
    }

    pub fn starting_min(&self) -> &[f64] {
        &self.starting_min
    }

    pub fn starting_max(&self) -> &[f64] {
        &self.starting_max
    }

    /// Length of the principal diagonal of the STARTING box.
    pub fn diagonal_length(&self) -> f64 {
        self.starting_min
            .iter()
            .zip(&self.starting_max)
            .map(|(lo, hi)| (hi - lo) * (hi - lo))
            .sum::<f64>()
            .sqrt()
    }

    /// Replaces the current bounds. The starting bounds are untouched.
    pub fn set_bounds(&mut self, min: Vec<f64>, max: Vec<f64>) -> Result<()> {
        let n = self.n_dims();
        if min.len() != n || max.len() != n {
            return Err(CfoError::DimensionMismatch {
                expected: n,
                actual: if min.len() != n { min.len() } else { max.len() },
            });
        }
        check_bounds(&min, &max)?;
        self.min = min;
        self.max = max;
        Ok(())
    }

    /// Restores the current bounds to the starting bounds.
    pub fn reset(&mut self) {
        self.min.clone_from(&self.starting_min);
        self.max.clone_from(&self.starting_max);
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.n_dims()
            && x.iter()
                .zip(self.min.iter().zip(&self.max))
                .all(|(v, (lo, hi))| *lo <= *v && *v <= *hi)
    }

    pub(crate) fn bounds_mut(&mut self) -> (&mut [f64], &mut [f64]) {
        (&mut self.min, &mut self.max)
    }
}

fn check_bounds(min: &[f64], max: &[f64]) -> Result<()> {
    for (dim, (&lo, &hi)) in min.iter().zip(max).enumerate() {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(CfoError::InvalidBounds {
                dim,
                min: lo,
                max: hi,
            });
        }
    }
    Ok(())
}

/// Full per-step history of one inner run: positions `R`, accelerations `A`
/// and fitnesses `M`.
///
/// Storage is step-major and grows one step at a time, so memory follows the
/// number of steps actually taken rather than the step budget.
#[derive(Debug, Clone, PartialEq)]
pub struct RunMatrices {
    n_probes: usize,
    n_dims: usize,
    n_steps_allocated: usize,
    positions: Vec<f64>,
    accelerations: Vec<f64>,
    fitness: Vec<f64>,
}

impl RunMatrices {
    pub fn new(n_probes: usize, n_dims: usize, n_steps_allocated: usize) -> Self {
        let per_step = n_probes * n_dims;
        let reserve = per_step * 64.min(n_steps_allocated + 1);
        Self {
            n_probes,
            n_dims,
            n_steps_allocated,
            positions: Vec::with_capacity(reserve),
            accelerations: Vec::with_capacity(reserve),
            fitness: Vec::with_capacity(n_probes * 64.min(n_steps_allocated + 1)),
        }
    }

    pub fn n_probes(&self) -> usize {
        self.n_probes
    }

    pub fn n_dims(&self) -> usize {
        self.n_dims
    }

    /// The step budget `N_t`; valid step indices are `0..=n_steps_allocated`.
    pub fn n_steps_allocated(&self) -> usize {
        self.n_steps_allocated
    }

    /// Number of steps whose positions have been stored.
    pub fn n_position_steps(&self) -> usize {
        self.positions.len() / (self.n_probes * self.n_dims)
    }

    /// Number of steps whose fitness row has been recorded.
    pub fn n_evaluated_steps(&self) -> usize {
        self.fitness.len() / self.n_probes
    }

    pub fn last_evaluated_step(&self) -> Option<usize> {
        self.n_evaluated_steps().checked_sub(1)
    }

    /// Appends the positions for the next step (all probes, probe-major).
    /// Accelerations for that step start at zero.
    pub fn push_positions(&mut self, positions: &[f64]) {
        assert_eq!(positions.len(), self.n_probes * self.n_dims);
        assert!(
            self.n_position_steps() <= self.n_steps_allocated,
            "step budget exhausted"
        );
        self.positions.extend_from_slice(positions);
        self.accelerations
            .resize(self.accelerations.len() + positions.len(), 0.0);
    }

    /// Records the fitness row for the oldest step that has positions but no
    /// fitness yet.
    pub fn push_fitness(&mut self, row: &[f64]) {
        assert_eq!(row.len(), self.n_probes);
        assert!(
            self.n_evaluated_steps() < self.n_position_steps(),
            "no positions stored for the step being evaluated"
        );
        self.fitness.extend_from_slice(row);
    }

    fn step_range(&self, step: usize) -> std::ops::Range<usize> {
        let per_step = self.n_probes * self.n_dims;
        step * per_step..(step + 1) * per_step
    }

    /// Positions of every probe at `step`, probe-major (`N_p * N_d` values).
    pub fn step_positions(&self, step: usize) -> &[f64] {
        &self.positions[self.step_range(step)]
    }

    pub fn step_positions_mut(&mut self, step: usize) -> &mut [f64] {
        let range = self.step_range(step);
        &mut self.positions[range]
    }

    /// Positions at `step - 1` (read-only) and `step` (mutable).
    pub fn step_pair_mut(&mut self, step: usize) -> (&[f64], &mut [f64]) {
        assert!(step >= 1);
        let split = self.step_range(step).start;
        let end = self.step_range(step).end;
        let (before, after) = self.positions[..end].split_at_mut(split);
        let per_step = self.n_probes * self.n_dims;
        (&before[split - per_step..], after)
    }

    pub fn step_accelerations(&self, step: usize) -> &[f64] {
        &self.accelerations[self.step_range(step)]
    }

    pub fn step_accelerations_mut(&mut self, step: usize) -> &mut [f64] {
        let range = self.step_range(step);
        &mut self.accelerations[range]
    }

    pub fn position(&self, probe: usize, step: usize) -> &[f64] {
        let start = self.step_range(step).start + probe * self.n_dims;
        &self.positions[start..start + self.n_dims]
    }

    pub fn acceleration(&self, probe: usize, step: usize) -> &[f64] {
        let start = self.step_range(step).start + probe * self.n_dims;
        &self.accelerations[start..start + self.n_dims]
    }

    /// `None` until the step has been evaluated.
    pub fn fitness(&self, probe: usize, step: usize) -> Option<f64> {
        self.fitness.get(step * self.n_probes + probe).copied()
    }

    pub fn fitness_row(&self, step: usize) -> &[f64] {
        &self.fitness[step * self.n_probes..(step + 1) * self.n_probes]
    }

    /// The whole fitness history as a flat step-major slice.
    pub fn fitness_history(&self) -> &[f64] {
        &self.fitness
    }
}

/// The hardwired constants of the parameter-free algorithm.
///
/// `g_const`, `delta_t`, `alpha` and `beta` are already folded into the
/// equations of motion and are kept for documentation only; the update loop
/// never reads them.
#[derive(Debug, Clone, PartialEq)]
pub struct InternalParams {
    pub n_t: usize,
    pub frep_init: f64,
    pub frep_delta: f64,
    pub frep_min: f64,
    pub gamma_start: f64,
    pub gamma_stop: f64,
    pub gamma_step: f64,
    pub saturation_window: usize,
    pub saturation_tol: f64,
    pub saturation_first_check: usize,
    pub shrink_start: usize,
    pub shrink_interval: usize,
    pub g_const: f64,
    pub delta_t: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Must be set to use any value other than the defaults above.
    pub experimental: bool,
}

impl Default for InternalParams {
    fn default() -> Self {
        Self {
            n_t: 1000,
            frep_init: 0.5,
            frep_delta: 0.1,
            frep_min: 0.05,
            gamma_start: 0.0,
            gamma_stop: 1.0,
            gamma_step: 0.1,
            saturation_window: 25,
            saturation_tol: 1e-6,
            saturation_first_check: 35,
            shrink_start: 20,
            shrink_interval: 10,
            g_const: 2.0,
            delta_t: 1.0,
            alpha: 1.0,
            beta: 1.0,
            experimental: false,
        }
    }
}

impl InternalParams {
    /// Step budget used for objectives with a random component.
    pub const NOISY_STEP_BUDGET: usize = 100;

    /// Defaults, with the reduced step budget when the objective is noisy.
    pub fn for_objective(noisy: bool) -> Self {
        let mut params = Self::default();
        if noisy {
            params.n_t = Self::NOISY_STEP_BUDGET;
        }
        params
    }

    /// Rejects non-default values unless `experimental` is set. The reduced
    /// noisy-objective step budget counts as a default.
    pub fn validate(&self) -> Result<()> {
        if self.experimental {
            return Ok(());
        }
        let mut reference = Self::default();
        if self.n_t == Self::NOISY_STEP_BUDGET {
            reference.n_t = Self::NOISY_STEP_BUDGET;
        }
        if *self == reference {
            Ok(())
        } else {
            Err(CfoError::NonDefaultParams)
        }
    }

    /// Largest probes-per-dimension count tried for a space of `n_dims`.
    pub fn probes_per_dim_max(n_dims: usize) -> usize {
        match n_dims {
            1..=6 => 14,
            7..=10 => 12,
            11..=15 => 10,
            16..=20 => 8,
            21..=30 => 6,
            _ => 4,
        }
    }

    /// Gamma grid `(g - 1) / 10` for `g = 1..=11` with the default settings.
    /// Each value is computed directly rather than accumulated.
    pub fn gamma_grid(&self) -> Vec<f64> {
        let n = ((self.gamma_stop - self.gamma_start) / self.gamma_step).round() as usize + 1;
        if !self.experimental {
            return (0..n).map(|g| g as f64 / 10.0).collect();
        }
        (0..n)
            .map(|g| self.gamma_start + g as f64 * self.gamma_step)
            .collect()
    }
}

/// Best fitness seen in a run, with where and when it was seen.
#[derive(Debug, Clone, PartialEq)]
pub struct BestRecord {
    pub fitness: f64,
    /// 0-based probe index.
    pub probe: usize,
    pub time_step: usize,
    pub position: Vec<f64>,
}

impl BestRecord {
    /// 1-based probe label for output.
    pub fn probe_label(&self) -> usize {
        self.probe + 1
    }
}

/// One inner run of the outer `(probes per dimension, gamma)` sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct RunLogEntry {
    pub probes_per_dim: usize,
    pub gamma: f64,
    pub n_probes: usize,
    pub run_best_fitness: f64,
    pub run_last_step: usize,
}

impl RunLogEntry {
    pub fn n_eval(&self) -> u64 {
        (self.n_probes * (self.run_last_step + 1)) as u64
    }
}

/// Outcome of a full parameter-free search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_fitness: f64,
    pub best_position: Vec<f64>,
    pub best_probes_per_dim: usize,
    pub best_gamma: f64,
    /// Total objective evaluations over every inner run.
    pub n_eval: u64,
    pub last_step_best_run: usize,
    /// Best (probe, step) of the winning run.
    pub best_record: BestRecord,
    pub per_run_log: Vec<RunLogEntry>,
    /// Complete history of the winning run, for diagnostics.
    pub best_run: RunMatrices,
}

impl SearchResult {
    /// Checks `n_eval` against the run log.
    pub fn n_eval_consistent(&self) -> bool {
        self.per_run_log
            .iter()
            .map(RunLogEntry::n_eval)
            .sum::<u64>()
            == self.n_eval
    }
}
