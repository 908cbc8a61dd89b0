//! A literal, loop-by-loop transcription of the reference routine, used to
//! check the engine bit for bit.

#![allow(clippy::needless_range_loop)]

use cfo_core::{run_inner, DecisionSpace, InternalParams, RunConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct OracleRun {
    /// r[p][i][j]
    pub r: Vec<Vec<Vec<f64>>>,
    /// m[p][j]
    pub m: Vec<Vec<f64>>,
    pub last_step: usize,
    pub best: (f64, usize, usize),
    pub final_min: Vec<f64>,
    pub final_max: Vec<f64>,
}

fn unit_step(x: f64) -> f64 {
    if x < 0.0 {
        0.0
    } else {
        1.0
    }
}

pub fn get_best_fitness(m: &[Vec<f64>], np: usize, step_number: usize) -> (f64, usize, usize) {
    let mut best = (m[0][0], 0, 0);
    for i in 0..=step_number {
        for p in 0..np {
            if m[p][i] >= best.0 {
                best = (m[p][i], p, i);
            }
        }
    }
    best
}

fn has_fitness_saturated(nsteps: usize, j: usize, np: usize, m: &[Vec<f64>]) -> bool {
    if j < nsteps + 10 {
        return false;
    }
    let mut sum = 0.0;
    let mut best_at_j = 0.0;
    for k in j + 1 - nsteps..=j {
        let mut best = m[0][k];
        for p in 0..np {
            if m[p][k] >= best {
                best = m[p][k];
            }
        }
        if k == j {
            best_at_j = best;
        }
        sum += best;
    }
    (sum / nsteps as f64 - best_at_j).abs() < 1e-6
}

#[allow(clippy::needless_range_loop)]
fn retrieve(
    r: &mut [Vec<Vec<f64>>],
    np: usize,
    nd: usize,
    j: usize,
    xmin: &[f64],
    xmax: &[f64],
    frep: f64,
) {
    for p in 0..np {
        for i in 0..nd {
            if r[p][i][j] < xmin[i] {
                r[p][i][j] = (xmin[i] + frep * (r[p][i][j - 1] - xmin[i])).max(xmin[i]);
            }
            if r[p][i][j] > xmax[i] {
                r[p][i][j] = (xmax[i] - frep * (xmax[i] - r[p][i][j - 1])).min(xmax[i]);
            }
        }
    }
}

#[allow(clippy::needless_range_loop)]
pub fn oracle_run(
    nd: usize,
    ppd: usize,
    gamma: f64,
    nt: usize,
    start_min: &[f64],
    start_max: &[f64],
    f: &dyn Fn(&[f64]) -> f64,
) -> OracleRun {
    let np = ppd * nd;
    let mut xmin = start_min.to_vec();
    let mut xmax = start_max.to_vec();
    let mut r = vec![vec![vec![0.0; nt + 1]; nd]; np];
    let mut a = vec![vec![vec![0.0; nt + 1]; nd]; np];
    let mut m = vec![vec![0.0; nt + 1]; np];
    let eval = |r: &[Vec<Vec<f64>>], p: usize, j: usize| {
        let x: Vec<f64> = (0..nd).map(|i| r[p][i][j]).collect();
        f(&x)
    };

    for i in 0..nd {
        for p in 0..np {
            r[p][i][0] = xmin[i] + gamma * (xmax[i] - xmin[i]);
        }
    }
    for i in 0..nd {
        let delta = (xmax[i] - xmin[i]) / (ppd - 1) as f64;
        for k in 0..ppd {
            let p = k + ppd * i;
            r[p][i][0] = (xmin[i] + k as f64 * delta).min(xmax[i]);
        }
    }
    for p in 0..np {
        m[p][0] = eval(&r, p, 0);
    }

    let mut frep = 0.5;
    let mut last_step = nt;
    let mut best_this_run = (m[0][0], 0, 0);
    for j in 1..=nt {
        for p in 0..np {
            for i in 0..nd {
                r[p][i][j] = r[p][i][j - 1] + a[p][i][j - 1];
            }
        }
        retrieve(&mut r, np, nd, j, &xmin, &xmax, frep);
        for p in 0..np {
            m[p][j] = eval(&r, p, j);
        }
        for p in 0..np {
            for i in 0..nd {
                a[p][i][j] = 0.0;
                for k in 0..np {
                    if k != p {
                        let mut sum_sq = 0.0;
                        for l in 0..nd {
                            let d = r[k][l][j] - r[p][l][j];
                            sum_sq += d * d;
                        }
                        if sum_sq != 0.0 {
                            let denom = sum_sq.sqrt();
                            let numerator = unit_step(m[k][j] - m[p][j]) * (m[k][j] - m[p][j]);
                            a[p][i][j] += (r[k][i][j] - r[p][i][j]) * numerator / denom;
                        }
                    }
                }
            }
        }
        let best = get_best_fitness(&m, np, j);
        if best.0 >= best_this_run.0 {
            best_this_run = best;
        }
        frep += 0.1;
        if frep > 1.0 {
            frep = 0.05;
        }
        if j % 10 == 0 && j >= 20 {
            let (_, bp, bt) = best;
            for i in 0..nd {
                xmin[i] += (r[bp][i][bt] - xmin[i]) / 2.0;
                xmax[i] -= (xmax[i] - r[bp][i][bt]) / 2.0;
            }
            retrieve(&mut r, np, nd, j, &xmin, &xmax, frep);
        }
        if has_fitness_saturated(25, j, np, &m) {
            last_step = j;
            break;
        }
    }

    OracleRun {
        r,
        m,
        last_step,
        best: best_this_run,
        final_min: xmin,
        final_max: xmax,
    }
}

pub fn smooth_objective(rng: &mut ChaCha8Rng, nd: usize) -> impl Fn(&[f64]) -> f64 {
    let centers: Vec<f64> = (0..nd).map(|_| rng.gen_range(-3.0..3.0)).collect();
    let weights: Vec<f64> = (0..nd).map(|_| rng.gen_range(0.2..2.0)).collect();
    let wave = rng.gen_range(0.0..0.5);
    move |x: &[f64]| {
        let bowl: f64 = x
            .iter()
            .zip(&centers)
            .zip(&weights)
            .map(|((xi, c), w)| w * (xi - c) * (xi - c))
            .sum();
        wave * x[0].sin() - bowl
    }
}

/// Runs `count` random small instances through both implementations and
/// reports the first mismatch. On success returns how many runs ended early.
pub fn check_random_instances(seed: u64, count: usize) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut saturated = 0;
    for instance in 0..count {
        let nd = rng.gen_range(1..=2);
        let ppd = if nd == 1 {
            rng.gen_range(2..=6)
        } else {
            rng.gen_range(2..=3)
        };
        let gamma = rng.gen_range(0.0..=1.0);
        let nt = rng.gen_range(20..=40);
        let min: Vec<f64> = (0..nd).map(|_| rng.gen_range(-6.0..-1.0)).collect();
        let max: Vec<f64> = (0..nd).map(|_| rng.gen_range(1.0..6.0)).collect();
        let f = smooth_objective(&mut rng, nd);

        let oracle = oracle_run(nd, ppd, gamma, nt, &min, &max, &f);

        let params = InternalParams {
            n_t: nt,
            experimental: true,
            ..InternalParams::default()
        };
        let space = DecisionSpace::new(min, max).map_err(|e| e.to_string())?;
        let mut config = RunConfig::new(ppd, gamma, space, params).map_err(|e| e.to_string())?;
        let mut objective = |x: &[f64]| f(x);
        let out = run_inner(&mut config, &mut objective).map_err(|e| e.to_string())?;

        let tag = format!("instance {instance} (nd {nd}, ppd {ppd}, nt {nt})");
        if out.last_step != oracle.last_step {
            return Err(format!(
                "{tag}: last step {} vs {}",
                out.last_step, oracle.last_step
            ));
        }
        let run = &out.matrices;
        for j in 0..=oracle.last_step {
            for p in 0..ppd * nd {
                let got = run.fitness(p, j).unwrap_or(f64::NAN);
                if got.to_bits() != oracle.m[p][j].to_bits() {
                    return Err(format!(
                        "{tag}: fitness p{p} j{j}: {got} vs {}",
                        oracle.m[p][j]
                    ));
                }
                for i in 0..nd {
                    let got = run.position(p, j)[i];
                    if got.to_bits() != oracle.r[p][i][j].to_bits() {
                        return Err(format!(
                            "{tag}: position p{p} i{i} j{j}: {got} vs {}",
                            oracle.r[p][i][j]
                        ));
                    }
                }
            }
        }
        let best = (
            out.best.fitness.to_bits(),
            out.best.probe,
            out.best.time_step,
        );
        if best != (oracle.best.0.to_bits(), oracle.best.1, oracle.best.2) {
            return Err(format!("{tag}: best {:?} vs {:?}", out.best, oracle.best));
        }
        if config.space.min() != &oracle.final_min[..]
            || config.space.max() != &oracle.final_max[..]
        {
            return Err(format!("{tag}: final bounds differ"));
        }
        if out.last_step < nt {
            saturated += 1;
        }
    }
    Ok(saturated)
}
