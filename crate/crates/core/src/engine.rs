//! Central Force Optimization with hardwired parameters.
//!
//! Probes fly through the decision space under pseudo-gravitational
//! attraction toward fitter probes. One inner run starts from an
//! orthogonal probe-line layout, steps the two equations of motion, pulls
//! errant probes back inside, shrinks the space around the best point every
//! tenth step from step 20, and stops once the best fitness saturates. The
//! outer search sweeps probes per dimension over `2, 4, ..` and the
//! layout's diagonal parameter gamma over `0.0, 0.1, .., 1.0`.

use crate::error::{CfoError, Result};
use crate::model::{
    BestRecord, DecisionSpace, InternalParams, RunLogEntry, RunMatrices, SearchResult,
};
use crate::objectives::{function_spec, BenchmarkObjective, FunctionId};

/// Something to maximize.
pub trait Objective {
    fn evaluate(&mut self, x: &[f64]) -> Result<f64>;
}

impl<F> Objective for F
where
    F: FnMut(&[f64]) -> f64,
{
    fn evaluate(&mut self, x: &[f64]) -> Result<f64> {
        Ok(self(x))
    }
}

/// Settings for one inner run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub probes_per_dim: usize,
    pub gamma: f64,
    pub space: DecisionSpace,
    pub params: InternalParams,
}

impl RunConfig {
    pub fn new(
        probes_per_dim: usize,
        gamma: f64,
        space: DecisionSpace,
        params: InternalParams,
    ) -> Result<Self> {
        let config = Self {
            probes_per_dim,
            gamma,
            space,
            params,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.probes_per_dim < 2 {
            return Err(CfoError::InvalidProbesPerDim(self.probes_per_dim));
        }
        if !(0.0..=1.0).contains(&self.gamma) {
            return Err(CfoError::InvalidGamma(self.gamma));
        }
        self.params.validate()
    }

    pub fn n_probes(&self) -> usize {
        self.probes_per_dim * self.space.n_dims()
    }
}

/// Repositioning factor for errant probes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrepState(f64);

impl FrepState {
    pub fn new(params: &InternalParams) -> Self {
        Self(params.frep_init)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Adds the increment and wraps to the minimum once the result exceeds 1.
    pub fn advance(self, params: &InternalParams) -> Self {
        let next = self.0 + params.frep_delta;
        if next > 1.0 {
            Self(params.frep_min)
        } else {
            Self(next)
        }
    }
}

/// Step-0 layout: one probe line per axis, each holding `probes_per_dim`
/// evenly spaced probes, all lines crossing at the diagonal point
/// `min + gamma * (max - min)`. Returned probe-major.
pub fn compute_ipd(space: &DecisionSpace, probes_per_dim: usize, gamma: f64) -> Result<Vec<f64>> {
    if probes_per_dim < 2 {
        return Err(CfoError::InvalidProbesPerDim(probes_per_dim));
    }
    let n_dims = space.n_dims();
    let n_probes = probes_per_dim * n_dims;
    let (min, max) = (space.min(), space.max());

    let mut positions = Vec::with_capacity(n_probes * n_dims);
    for _ in 0..n_probes {
        positions.extend((0..n_dims).map(|i| min[i] + gamma * (max[i] - min[i])));
    }
    for i in 0..n_dims {
        let spacing = (max[i] - min[i]) / (probes_per_dim - 1) as f64;
        for k in 0..probes_per_dim {
            let p = k + probes_per_dim * i;
            // Rounding can carry the last probe a hair past the upper bound.
            positions[p * n_dims + i] = (min[i] + k as f64 * spacing).min(max[i]);
        }
    }
    Ok(positions)
}

/// First equation of motion. For each probe, sums the pull of every fitter
/// (or equally fit) probe, `(M_k - M_p) (R_k - R_p) / |R_k - R_p|`.
/// Coincident probes exert no pull, and neither does a pair whose fitness
/// difference is not finite, as happens when a probe sits on a pole of the
/// objective.
///
/// `out` is overwritten.
pub fn compute_accelerations(positions: &[f64], fitness: &[f64], n_dims: usize, out: &mut [f64]) {
    let n_probes = fitness.len();
    debug_assert_eq!(positions.len(), n_probes * n_dims);
    debug_assert_eq!(out.len(), positions.len());
    out.fill(0.0);
    for p in 0..n_probes {
        let rp = &positions[p * n_dims..(p + 1) * n_dims];
        let ap = &mut out[p * n_dims..(p + 1) * n_dims];
        for k in 0..n_probes {
            if k == p {
                continue;
            }
            // A zero or negative difference adds nothing, and skipping it
            // leaves every accumulated bit unchanged.
            let mass = fitness[k] - fitness[p];
            if mass <= 0.0 || !mass.is_finite() {
                continue;
            }
            let rk = &positions[k * n_dims..(k + 1) * n_dims];
            let sum_sq: f64 = rk.iter().zip(rp).map(|(a, b)| (a - b) * (a - b)).sum();
            if sum_sq == 0.0 {
                continue;
            }
            let distance = sum_sq.sqrt();
            for i in 0..n_dims {
                let pull = (rk[i] - rp[i]) * mass / distance;
                if pull.is_finite() {
                    ap[i] += pull;
                }
            }
        }
    }
}

/// Second equation of motion, `R_j = R_{j-1} + a_{j-1}`, coordinate-wise.
pub fn update_positions(previous: &[f64], accelerations: &[f64], out: &mut [f64]) {
    for ((o, r), a) in out.iter_mut().zip(previous).zip(accelerations) {
        *o = r + a;
    }
}

/// Pulls every out-of-bounds coordinate back inside, a fraction `frep` of
/// the way from the boundary toward the probe's previous coordinate.
pub fn retrieve_errant_probes(
    current: &mut [f64],
    previous: &[f64],
    space: &DecisionSpace,
    frep: f64,
) {
    let n_dims = space.n_dims();
    let (min, max) = (space.min(), space.max());
    for (idx, (x, prev)) in current.iter_mut().zip(previous).enumerate() {
        let i = idx % n_dims;
        if *x < min[i] {
            *x = (min[i] + frep * (prev - min[i])).max(min[i]);
        }
        if *x > max[i] {
            *x = (max[i] - frep * (max[i] - prev)).min(max[i]);
        }
    }
}

/// Halves every dimension of the space, moving each boundary halfway
/// toward `r_best`.
pub fn shrink_space(space: &mut DecisionSpace, r_best: &[f64]) {
    let (min, max) = space.bounds_mut();
    for i in 0..min.len() {
        min[i] += (r_best[i] - min[i]) / 2.0;
        max[i] -= (max[i] - r_best[i]) / 2.0;
    }
}

/// Best fitness over all probes and steps `0..=through`. Steps are scanned
/// in order, probes in order within a step, and a later entry replaces the
/// current best on ties.
pub fn best_so_far(run: &RunMatrices, through: usize) -> Result<BestRecord> {
    let last = run.last_evaluated_step();
    if last.is_none_or(|last| through > last) {
        return Err(CfoError::StepNotEvaluated {
            step: through,
            last: last.unwrap_or(0),
        });
    }
    let mut best = (run.fitness_row(0)[0], 0, 0);
    for step in 0..=through {
        scan_step(run.fitness_row(step), step, &mut best);
    }
    let (fitness, probe, time_step) = best;
    Ok(BestRecord {
        fitness,
        probe,
        time_step,
        position: run.position(probe, time_step).to_vec(),
    })
}

fn scan_step(row: &[f64], step: usize, best: &mut (f64, usize, usize)) {
    for (p, &m) in row.iter().enumerate() {
        if m >= best.0 {
            *best = (m, p, step);
        }
    }
}

/// Best fitness among the probes at one step (`>=` scan, first probe seeds).
pub fn step_best(row: &[f64]) -> (f64, usize) {
    let mut best = (row[0], 0);
    for (p, &m) in row.iter().enumerate() {
        if m >= best.0 {
            best = (m, p);
        }
    }
    best
}

/// Early-termination test: the mean of the per-step best fitness over the
/// last `saturation_window` steps (current included) is within
/// `saturation_tol` of the current per-step best. Never fires before
/// `saturation_first_check`.
pub fn fitness_saturated(run: &RunMatrices, step: usize, params: &InternalParams) -> bool {
    if step < params.saturation_first_check || step + 1 < params.saturation_window {
        return false;
    }
    let first = step + 1 - params.saturation_window;
    let bests: Vec<f64> = (first..=step)
        .map(|k| step_best(run.fitness_row(k)).0)
        .collect();
    window_saturated(&bests, params)
}

fn window_saturated(window: &[f64], params: &InternalParams) -> bool {
    let sum: f64 = window.iter().sum();
    let current = window[window.len() - 1];
    (sum / params.saturation_window as f64 - current).abs() < params.saturation_tol
}

/// Decision-space change applied at one step.
#[derive(Debug, Clone, PartialEq)]
pub struct ShrinkEvent {
    pub step: usize,
    pub old_min: Vec<f64>,
    pub old_max: Vec<f64>,
    pub new_min: Vec<f64>,
    pub new_max: Vec<f64>,
}

/// Result of one inner run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub best: BestRecord,
    pub last_step: usize,
    pub n_eval: u64,
    pub matrices: RunMatrices,
    pub shrinks: Vec<ShrinkEvent>,
}

/// One inner run. The space is shrunk in place and NOT reset afterwards.
pub fn run_inner<O: Objective + ?Sized>(
    config: &mut RunConfig,
    objective: &mut O,
) -> Result<RunOutcome> {
    config.validate()?;
    let params = config.params.clone();
    let n_dims = config.space.n_dims();
    let n_probes = config.n_probes();
    let per_step = n_probes * n_dims;

    let mut run = RunMatrices::new(n_probes, n_dims, params.n_t);
    let mut fitness = vec![0.0; n_probes];
    let mut scratch = vec![0.0; per_step];
    let mut step_bests = Vec::with_capacity(params.n_t + 1);
    let mut shrinks = Vec::new();

    let ipd = compute_ipd(&config.space, config.probes_per_dim, config.gamma)?;
    run.push_positions(&ipd);
    evaluate_step(&mut run, 0, objective, &mut fitness)?;
    step_bests.push(step_best(&fitness).0);

    let mut frep = FrepState::new(&params);
    let mut best = (fitness[0], 0, 0);
    scan_step(&fitness, 0, &mut best);
    let mut last_step = params.n_t;

    for j in 1..=params.n_t {
        update_positions(
            run.step_positions(j - 1),
            run.step_accelerations(j - 1),
            &mut scratch,
        );
        retrieve_errant_probes(
            &mut scratch,
            run.step_positions(j - 1),
            &config.space,
            frep.value(),
        );
        debug_assert!(all_inside(&scratch, &config.space));
        run.push_positions(&scratch);

        evaluate_step(&mut run, j, objective, &mut fitness)?;
        compute_accelerations(run.step_positions(j), &fitness, n_dims, &mut scratch);
        run.step_accelerations_mut(j).copy_from_slice(&scratch);

        scan_step(&fitness, j, &mut best);
        step_bests.push(step_best(&fitness).0);
        frep = frep.advance(&params);

        if j >= params.shrink_start && j % params.shrink_interval == 0 {
            let old_min = config.space.min().to_vec();
            let old_max = config.space.max().to_vec();
            shrink_space(&mut config.space, run.position(best.1, best.2));
            let (previous, current) = run.step_pair_mut(j);
            retrieve_errant_probes(current, previous, &config.space, frep.value());
            debug_assert!(all_inside(run.step_positions(j), &config.space));
            shrinks.push(ShrinkEvent {
                step: j,
                old_min,
                old_max,
                new_min: config.space.min().to_vec(),
                new_max: config.space.max().to_vec(),
            });
        }

        if j >= params.saturation_first_check
            && j + 1 >= params.saturation_window
            && window_saturated(&step_bests[j + 1 - params.saturation_window..], &params)
        {
            last_step = j;
            break;
        }
    }

    let (fitness, probe, time_step) = best;
    Ok(RunOutcome {
        best: BestRecord {
            fitness,
            probe,
            time_step,
            position: run.position(probe, time_step).to_vec(),
        },
        last_step,
        n_eval: (n_probes * (last_step + 1)) as u64,
        matrices: run,
        shrinks,
    })
}

fn evaluate_step<O: Objective + ?Sized>(
    run: &mut RunMatrices,
    step: usize,
    objective: &mut O,
    fitness: &mut [f64],
) -> Result<()> {
    let positions = run.step_positions(step);
    let n_dims = run.n_dims();
    for (p, m) in fitness.iter_mut().enumerate() {
        *m = objective.evaluate(&positions[p * n_dims..(p + 1) * n_dims])?;
        if m.is_nan() {
            *m = f64::NEG_INFINITY;
        }
    }
    run.push_fitness(fitness);
    Ok(())
}

fn all_inside(positions: &[f64], space: &DecisionSpace) -> bool {
    positions.chunks(space.n_dims()).all(|x| space.contains(x))
}

/// The `(probes per dimension, gamma)` pairs of the outer sweep, in order.
pub fn search_grid(n_dims: usize, params: &InternalParams) -> Vec<(usize, f64)> {
    let max = InternalParams::probes_per_dim_max(n_dims);
    let gammas = params.gamma_grid();
    (2..=max)
        .step_by(2)
        .flat_map(|ppd| gammas.iter().map(move |&g| (ppd, g)))
        .collect()
}

/// Full parameter-free search. `make_objective` receives the 0-based run
/// index in sweep order and returns the objective for that run.
///
/// Later runs win ties for the global best. The space is reset to its
/// starting bounds after every run.
pub fn search<O, F>(
    space: &DecisionSpace,
    params: &InternalParams,
    mut make_objective: F,
) -> Result<SearchResult>
where
    O: Objective,
    F: FnMut(usize) -> O,
{
    params.validate()?;
    let mut space = space.clone();
    space.reset();

    let mut log = Vec::new();
    let mut n_eval = 0u64;
    let mut winner: Option<(usize, f64, RunOutcome)> = None;

    for (run_index, (ppd, gamma)) in search_grid(space.n_dims(), params).into_iter().enumerate() {
        let mut config = RunConfig::new(ppd, gamma, space, params.clone())?;
        let mut objective = make_objective(run_index);
        let outcome = run_inner(&mut config, &mut objective)?;
        space = config.space;
        space.reset();

        n_eval += outcome.n_eval;
        log.push(RunLogEntry {
            probes_per_dim: ppd,
            gamma,
            n_probes: outcome.matrices.n_probes(),
            run_best_fitness: outcome.best.fitness,
            run_last_step: outcome.last_step,
        });
        let better = winner
            .as_ref()
            .is_none_or(|(_, _, w)| outcome.best.fitness >= w.best.fitness);
        if better {
            winner = Some((ppd, gamma, outcome));
        }
    }

    let (ppd, gamma, best) = winner.expect("search grid is never empty");
    Ok(SearchResult {
        best_fitness: best.best.fitness,
        best_position: best.best.position.clone(),
        best_probes_per_dim: ppd,
        best_gamma: gamma,
        n_eval,
        last_step_best_run: best.last_step,
        best_record: best.best,
        per_run_log: log,
        best_run: best.matrices,
    })
}

/// Searches benchmark `id`, optionally over replacement bounds. F7 noise for
/// run `r` is drawn from stream `r` of `seed`.
pub fn search_benchmark(
    id: FunctionId,
    seed: u64,
    bounds_override: Option<&DecisionSpace>,
) -> Result<SearchResult> {
    let spec = function_spec(id);
    let space = match bounds_override {
        Some(space) => {
            if space.n_dims() != spec.n_dims {
                return Err(CfoError::DimensionMismatch {
                    expected: spec.n_dims,
                    actual: space.n_dims(),
                });
            }
            DecisionSpace::new(space.starting_min().to_vec(), space.starting_max().to_vec())?
        }
        None => spec.space(),
    };
    search(&space, &spec.params(), |run| {
        BenchmarkObjective::new(id, seed, run as u64)
    })
}
