//! Run-level invariants as plain checks, so that both randomized tests and
//! fixed sweeps can use them.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

use cfo_core::{
    compute_accelerations, extract_series, run_inner, shrink_space, DecisionSpace, FrepState,
    InternalParams, RunConfig, RunOutcome,
};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// A few bumpy landscapes that keep probes moving and leaving the box.
pub fn landscape(kind: u8, x: &[f64]) -> f64 {
    match kind % 4 {
        0 => -x.iter().map(|v| v * v).sum::<f64>(),
        1 => x.iter().map(|v| (3.0 * v).sin() * 10.0 - v.abs()).sum(),
        2 => -x.iter().map(|v| (v - 7.0).powi(2)).sum::<f64>(),
        _ => x.iter().map(|v| v.powi(3)).sum::<f64>() * 50.0,
    }
}

pub fn run(
    space: &DecisionSpace,
    ppd: usize,
    gamma: f64,
    n_t: usize,
    kind: u8,
) -> (RunOutcome, RunConfig) {
    let params = InternalParams {
        n_t,
        experimental: true,
        ..InternalParams::default()
    };
    let mut config = RunConfig::new(ppd, gamma, space.clone(), params).unwrap();
    let mut f = |x: &[f64]| landscape(kind, x);
    let out = run_inner(&mut config, &mut f).unwrap();
    (out, config)
}

/// Every stored position lies inside the bounds in force at its step.
pub fn containment(out: &RunOutcome, space: &DecisionSpace) -> Check {
    let mut bounds = (space.min().to_vec(), space.max().to_vec());
    let mut shrinks = out.shrinks.iter().peekable();
    for j in 0..=out.last_step {
        if let Some(event) = shrinks.next_if(|e| e.step == j) {
            bounds = (event.new_min.clone(), event.new_max.clone());
        }
        for p in 0..out.matrices.n_probes() {
            for (i, &x) in out.matrices.position(p, j).iter().enumerate() {
                ensure!(
                    x >= bounds.0[i] && x <= bounds.1[i],
                    "p{p} i{i} j{j}: {x} outside"
                );
            }
        }
    }
    Ok(())
}

/// `shrink_space` moves each bound exactly halfway toward the given point.
pub fn shrink_halves(space: &DecisionSpace, t: &[f64]) -> Check {
    let r_best: Vec<f64> = (0..space.n_dims())
        .map(|i| space.min()[i] + t[i] * (space.max()[i] - space.min()[i]))
        .collect();
    let mut shrunk = space.clone();
    shrink_space(&mut shrunk, &r_best);
    for i in 0..space.n_dims() {
        let (lo, hi) = (space.min()[i], space.max()[i]);
        ensure!(
            shrunk.min()[i] == lo + (r_best[i] - lo) / 2.0,
            "min of dim {i}"
        );
        ensure!(
            shrunk.max()[i] == hi - (hi - r_best[i]) / 2.0,
            "max of dim {i}"
        );
        let ratio = (shrunk.max()[i] - shrunk.min()[i]) / (hi - lo);
        ensure!((ratio - 0.5).abs() < 1e-12, "dim {i} ratio {ratio}");
    }
    Ok(())
}

/// Shrinks happen on schedule and halve every dimension.
pub fn shrink_events(out: &RunOutcome) -> Check {
    for event in &out.shrinks {
        ensure!(
            event.step >= 20 && event.step % 10 == 0,
            "shrink at step {}",
            event.step
        );
        for i in 0..event.old_min.len() {
            let old = event.old_max[i] - event.old_min[i];
            let new = event.new_max[i] - event.new_min[i];
            ensure!(
                (new / old - 0.5).abs() < 1e-12,
                "step {} dim {i}",
                event.step
            );
        }
    }
    let expected = (20..=out.last_step).filter(|j| j % 10 == 0).count();
    ensure!(
        out.shrinks.len() == expected,
        "{} shrinks, expected {expected}",
        out.shrinks.len()
    );
    Ok(())
}

/// A constant objective produces no pull at all; only the retrieval that
/// follows a shrink can move a probe.
pub fn zero_field(space: &DecisionSpace, ppd: usize, gamma: f64, level: f64) -> Check {
    let mut config = RunConfig::new(ppd, gamma, space.clone(), InternalParams::default()).unwrap();
    let mut f = |_: &[f64]| level;
    let out = run_inner(&mut config, &mut f).unwrap();
    ensure!(out.last_step == 35, "stopped at {}", out.last_step);
    ensure!(
        out.n_eval == (ppd * space.n_dims() * 36) as u64,
        "n_eval {}",
        out.n_eval
    );
    for j in 0..=out.last_step {
        ensure!(
            out.matrices.step_accelerations(j).iter().all(|&a| a == 0.0),
            "nonzero acceleration at step {j}"
        );
        if j > 0 && !out.shrinks.iter().any(|e| e.step == j) {
            ensure!(
                out.matrices.step_positions(j) == out.matrices.step_positions(j - 1),
                "probes moved at step {j}"
            );
        }
    }
    Ok(())
}

pub fn finite_accelerations_grid(coords: &[i32], fitness: &[i32]) -> Check {
    let positions: Vec<f64> = coords.iter().map(|&c| c as f64).collect();
    let fitness: Vec<f64> = fitness.iter().map(|&m| m as f64).collect();
    let n_dims = positions.len() / fitness.len();
    let mut out = vec![0.0; positions.len()];
    compute_accelerations(&positions, &fitness, n_dims, &mut out);
    ensure!(
        out.iter().all(|a| a.is_finite()),
        "non-finite acceleration {out:?}"
    );
    Ok(())
}

pub fn finite_accelerations(out: &RunOutcome) -> Check {
    for j in 0..=out.last_step {
        ensure!(
            out.matrices
                .step_accelerations(j)
                .iter()
                .all(|a| a.is_finite()),
            "non-finite acceleration at step {j}"
        );
    }
    Ok(())
}

pub fn step_one_echo(out: &RunOutcome) -> Check {
    ensure!(
        out.matrices.step_accelerations(0).iter().all(|&a| a == 0.0),
        "step-0 accelerations not zero"
    );
    ensure!(
        out.matrices.step_positions(1) == out.matrices.step_positions(0),
        "step 1 differs from step 0"
    );
    Ok(())
}

/// The repositioning factor stays in [0.05, 1] and wraps only to 0.05,
/// at steps 6, 16, 26, ...
pub fn frep_ladder() -> Check {
    let params = InternalParams::default();
    let mut frep = FrepState::new(&params);
    let mut values = vec![frep.value()];
    for _ in 0..60 {
        frep = frep.advance(&params);
        values.push(frep.value());
    }
    ensure!(
        values.iter().all(|&v| (0.05..=1.0).contains(&v)),
        "out of range: {values:?}"
    );
    let resets: Vec<usize> = (1..values.len())
        .filter(|&j| values[j] < values[j - 1])
        .collect();
    ensure!(
        resets.iter().all(|&j| values[j] == 0.05),
        "reset to a value other than 0.05"
    );
    ensure!(
        resets == vec![6, 16, 26, 36, 46, 56],
        "resets at {resets:?}"
    );
    Ok(())
}

pub fn monotone_best(out: &RunOutcome, config: &RunConfig) -> Check {
    let series =
        extract_series(&out.matrices, &config.space, out.last_step).map_err(|e| e.to_string())?;
    ensure!(
        series.step_best_fitness.len() == out.last_step + 1,
        "series length"
    );
    let mut running = f64::NEG_INFINITY;
    for (step, (&best, &cumulative)) in series
        .step_best_fitness
        .iter()
        .zip(&series.cumulative_best_fitness)
        .enumerate()
    {
        running = running.max(best);
        ensure!(
            cumulative == running,
            "step {step}: {cumulative} vs running max {running}"
        );
    }
    ensure!(
        running == out.best.fitness,
        "final {running} vs best {}",
        out.best.fitness
    );
    ensure!(series.davg.iter().all(|&d| d >= 0.0), "negative davg");
    Ok(())
}

pub fn no_early_saturation(out: &RunOutcome) -> Check {
    ensure!(out.last_step >= 35, "stopped at {}", out.last_step);
    Ok(())
}
