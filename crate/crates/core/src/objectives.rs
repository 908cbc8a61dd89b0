//! The 23-function benchmark suite, posed as maximization problems.
//!
//! Each function is the negative of the usual minimization form, and each
//! body follows the reference program's source rather than the textbook
//! definition wherever the two disagree:
//!
//! * F5 squares the whole Rosenbrock bracket, `(100(x[i+1] - x[i]^2)^2 + (x[i] - 1))^2`.
//! * F9 squares each Rastrigin term, `(x^2 - 10 cos(2 pi x) + 10)^2`.
//! * F11 is Griewank shifted so its maximum sits at `x = 100`.
//! * F7 subtracts one uniform `[0, 1)` deviate per call.
//! * F20 carries the source's `P[3][2] = 0.1415` (usually quoted as 0.1451).
//!
//! Two entries keep the textbook form: Kowalik's `a[6]` is 0.0627, and
//! Goldstein-Price keeps its `1 +` and `30 +` offsets (maximum -3 at (0, -1)).

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::Objective;
use crate::error::{CfoError, Result};
use crate::model::{DecisionSpace, InternalParams};

const TWO_PI: f64 = 2.0 * PI;

/// Benchmark function identifier, `F1` through `F23`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctionId(u8);

impl FunctionId {
    pub const COUNT: u8 = 23;

    pub fn new(number: u8) -> Result<Self> {
        if (1..=Self::COUNT).contains(&number) {
            Ok(Self(number))
        } else {
            Err(CfoError::UnknownFunction(format!("F{number}")))
        }
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = FunctionId> {
        (1..=Self::COUNT).map(FunctionId)
    }

    /// Only F7 has a random component.
    pub fn is_noisy(self) -> bool {
        self.0 == 7
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0)
    }
}

impl FromStr for FunctionId {
    type Err = CfoError;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .strip_prefix('F')
            .or_else(|| s.strip_prefix('f'))
            .ok_or_else(|| CfoError::UnknownFunction(s.to_string()))?;
        let number: u8 = digits
            .parse()
            .map_err(|_| CfoError::UnknownFunction(s.to_string()))?;
        Self::new(number).map_err(|_| CfoError::UnknownFunction(s.to_string()))
    }
}

/// Dimensionality, bounds and tabulated maximum of one benchmark function.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    pub id: FunctionId,
    pub n_dims: usize,
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    pub known_fmax: f64,
    pub n_t_override: Option<usize>,
    pub deterministic: bool,
}

impl FunctionSpec {
    pub fn space(&self) -> DecisionSpace {
        DecisionSpace::new(self.min.clone(), self.max.clone()).expect("benchmark bounds are valid")
    }

    /// Hardwired parameters, honoring the step-budget override.
    pub fn params(&self) -> InternalParams {
        let mut params = InternalParams::default();
        if let Some(n_t) = self.n_t_override {
            params.n_t = n_t;
        }
        params
    }
}

/// Returns a fresh copy of the spec for `id`.
pub fn function_spec(id: FunctionId) -> FunctionSpec {
    let (n_dims, lo, hi, known_fmax): (usize, f64, f64, f64) = match id.0 {
        1 => (30, -100.0, 100.0, 0.0),
        2 => (30, -10.0, 10.0, 0.0),
        3 => (30, -100.0, 100.0, 0.0),
        4 => (30, -100.0, 100.0, 0.0),
        5 => (30, -30.0, 30.0, 0.0),
        6 => (30, -100.0, 100.0, 0.0),
        7 => (30, -1.28, 1.28, 0.0),
        8 => (30, -500.0, 500.0, 12_569.5),
        9 => (30, -5.12, 5.12, 0.0),
        10 => (30, -32.0, 32.0, 0.0),
        11 => (30, -600.0, 600.0, 0.0),
        12 | 13 => (30, -50.0, 50.0, 0.0),
        14 => (2, -65.536, 65.536, -1.0),
        15 => (4, -5.0, 5.0, -3.075e-4),
        16 => (2, -5.0, 5.0, 1.031_628_5),
        // F17 has per-axis bounds, patched below.
        17 => (2, -5.0, 10.0, -0.398),
        18 => (2, -2.0, 2.0, -3.0),
        19 => (3, 0.0, 1.0, 3.86),
        20 => (6, 0.0, 1.0, 3.32),
        21..=23 => (4, 0.0, 10.0, 10.0),
        _ => unreachable!("FunctionId is always in 1..=23"),
    };
    let mut min = vec![lo; n_dims];
    let mut max = vec![hi; n_dims];
    if id.0 == 17 {
        min[1] = 0.0;
        max[1] = 15.0;
    }
    FunctionSpec {
        id,
        n_dims,
        min,
        max,
        known_fmax,
        n_t_override: id.is_noisy().then_some(InternalParams::NOISY_STEP_BUDGET),
        deterministic: !id.is_noisy(),
    }
}

/// Seedable uniform `[0, 1)` deviate stream for F7.
///
/// Backed by ChaCha8. The stream number selects an independent sequence for
/// the same seed, which lets every inner run draw its own noise.
#[derive(Debug, Clone)]
pub struct NoiseSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl NoiseSource {
    pub const DEFAULT_SEED: u64 = 1;

    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }
}

/// Fitness of `x` under benchmark `id` (higher is better).
///
/// `noise` must be supplied for F7 and is ignored otherwise.
pub fn evaluate(id: FunctionId, x: &[f64], noise: Option<&mut NoiseSource>) -> Result<f64> {
    let n_dims = function_spec(id).n_dims;
    if x.len() != n_dims {
        return Err(CfoError::DimensionMismatch {
            expected: n_dims,
            actual: x.len(),
        });
    }
    let value = match id.0 {
        1 => f1(x),
        2 => f2(x),
        3 => f3(x),
        4 => f4(x),
        5 => f5(x),
        6 => f6(x),
        7 => {
            let noise = noise.ok_or_else(|| CfoError::MissingNoise(id.to_string()))?;
            f7(x, noise.uniform())
        }
        8 => f8(x),
        9 => f9(x),
        10 => f10(x),
        11 => f11(x),
        12 => f12(x),
        13 => f13(x),
        14 => f14(x),
        15 => f15(x),
        16 => f16(x),
        17 => f17(x),
        18 => f18(x),
        19 => hartman(x, &H3_A, &H3_P),
        20 => hartman(x, &H6_A, &H6_P),
        21 => shekel(x, 5),
        22 => shekel(x, 7),
        23 => shekel(x, 10),
        _ => unreachable!(),
    };
    Ok(value)
}

/// A benchmark function bound to its noise source, ready for the engine.
#[derive(Debug, Clone)]
pub struct BenchmarkObjective {
    id: FunctionId,
    noise: Option<NoiseSource>,
}

impl BenchmarkObjective {
    /// Noise (F7 only) comes from `seed` on the given stream.
    pub fn new(id: FunctionId, seed: u64, stream: u64) -> Self {
        Self {
            id,
            noise: id
                .is_noisy()
                .then(|| NoiseSource::with_stream(seed, stream)),
        }
    }

    pub fn id(&self) -> FunctionId {
        self.id
    }
}

impl Objective for BenchmarkObjective {
    fn evaluate(&mut self, x: &[f64]) -> Result<f64> {
        evaluate(self.id, x, self.noise.as_mut())
    }
}

fn f1(x: &[f64]) -> f64 {
    -x.iter().map(|v| v * v).sum::<f64>()
}

fn f2(x: &[f64]) -> f64 {
    let (sum, prod) = x
        .iter()
        .fold((0.0, 1.0), |(s, p), v| (s + v.abs(), p * v.abs()));
    -(sum + prod)
}

fn f3(x: &[f64]) -> f64 {
    let mut z = 0.0;
    for i in 0..x.len() {
        let partial: f64 = x[..=i].iter().sum();
        z += partial * partial;
    }
    -z
}

fn f4(x: &[f64]) -> f64 {
    -x.iter().fold(f64::NEG_INFINITY, |m, v| m.max(v.abs()))
}

// Nonstandard: the whole bracket is squared and (x - 1) is not.
fn f5(x: &[f64]) -> f64 {
    let z: f64 = x
        .windows(2)
        .map(|w| (100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0)).powi(2))
        .sum();
    -z
}

fn f6(x: &[f64]) -> f64 {
    -x.iter().map(|v| (v + 0.5).floor().powi(2)).sum::<f64>()
}

fn f7(x: &[f64], deviate: f64) -> f64 {
    let z: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * v.powi(4))
        .sum();
    -z - deviate
}

fn f8(x: &[f64]) -> f64 {
    let z: f64 = x.iter().map(|v| -v * v.abs().sqrt().sin()).sum();
    -z
}

// Nonstandard: each Rastrigin term is squared.
fn f9(x: &[f64]) -> f64 {
    -x.iter()
        .map(|v| (v * v - 10.0 * (TWO_PI * v).cos() + 10.0).powi(2))
        .sum::<f64>()
}

fn f10(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sum_sq: f64 = x.iter().map(|v| v * v).sum();
    let sum_cos: f64 = x.iter().map(|v| (TWO_PI * v).cos()).sum();
    let z = (20.0 + E) - 20.0 * (-0.2 * (sum_sq / n).sqrt()).exp() - (sum_cos / n).exp();
    -z
}

// Griewank centered at x = 100 instead of the origin.
fn f11(x: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut prod = 1.0;
    for (i, v) in x.iter().enumerate() {
        let shifted = v - 100.0;
        sum += shifted * shifted;
        prod *= (shifted / ((i + 1) as f64).sqrt()).cos();
    }
    -(sum / 4000.0 - prod + 1.0)
}

/// Boundary penalty shared by F12 and F13: zero on `[-a, a]`,
/// `k (|x| - a)^m` outside.
pub fn penalty(x: f64, a: f64, k: f64, m: i32) -> f64 {
    if x > a {
        k * (x - a).powi(m)
    } else if x < -a {
        k * (-x - a).powi(m)
    } else {
        0.0
    }
}

fn f12(x: &[f64]) -> f64 {
    let n = x.len();
    let y = |v: f64| 1.0 + (v + 1.0) / 4.0;
    let mut sum1 = 0.0;
    for i in 0..n - 1 {
        let yi = y(x[i]);
        let yi1 = y(x[i + 1]);
        sum1 += (yi - 1.0).powi(2) * (1.0 + 10.0 * (PI * yi1).sin().powi(2));
    }
    sum1 += 10.0 * (PI * y(x[0])).sin().powi(2) + (y(x[n - 1]) - 1.0).powi(2);
    sum1 = PI * sum1 / n as f64;
    let sum2: f64 = x.iter().map(|&v| penalty(v, 10.0, 100.0, 4)).sum();
    -(sum1 + sum2)
}

fn f13(x: &[f64]) -> f64 {
    let n = x.len();
    let mut sum1 = 0.0;
    for i in 0..n - 1 {
        sum1 += (x[i] - 1.0).powi(2) * (1.0 + (3.0 * PI * x[i + 1]).sin().powi(2));
    }
    let xn = x[n - 1];
    sum1 +=
        (PI * 3.0 * x[0]).sin().powi(2) + (xn - 1.0).powi(2) * (1.0 + (TWO_PI * xn).sin().powi(2));
    let sum2: f64 = x.iter().map(|&v| penalty(v, 5.0, 100.0, 4)).sum();
    -(sum1 / 10.0 + sum2)
}

/// Shekel's Foxholes lattice: column `j` is `(FOXHOLE_A[0][j], FOXHOLE_A[1][j])`.
pub const FOXHOLE_A: [[f64; 25]; 2] = [
    [
        -32.0, -16.0, 0.0, 16.0, 32.0, -32.0, -16.0, 0.0, 16.0, 32.0, -32.0, -16.0, 0.0, 16.0,
        32.0, -32.0, -16.0, 0.0, 16.0, 32.0, -32.0, -16.0, 0.0, 16.0, 32.0,
    ],
    [
        -32.0, -32.0, -32.0, -32.0, -32.0, -16.0, -16.0, -16.0, -16.0, -16.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 16.0, 16.0, 16.0, 16.0, 16.0, 32.0, 32.0, 32.0, 32.0, 32.0,
    ],
];

fn f14(x: &[f64]) -> f64 {
    let mut sum = 0.0;
    for (j, (a0, a1)) in FOXHOLE_A[0].iter().zip(&FOXHOLE_A[1]).enumerate() {
        let inner = (x[0] - a0).powi(6) + (x[1] - a1).powi(6);
        sum += 1.0 / ((j + 1) as f64 + inner);
    }
    -1.0 / (0.002 + sum)
}

/// Kowalik data `(a_j, b_j)` with `b_j` already inverted.
pub const KOWALIK: [(f64, f64); 11] = [
    (0.1957, 1.0 / 0.25),
    (0.1947, 1.0 / 0.50),
    (0.1735, 1.0),
    (0.1600, 1.0 / 2.00),
    (0.0844, 1.0 / 4.00),
    (0.0627, 1.0 / 6.00),
    (0.0456, 1.0 / 8.00),
    (0.0342, 1.0 / 10.0),
    (0.0323, 1.0 / 12.0),
    (0.0235, 1.0 / 14.0),
    (0.0246, 1.0 / 16.0),
];

fn f15(x: &[f64]) -> f64 {
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    let z: f64 = KOWALIK
        .iter()
        .map(|&(a, b)| {
            let num = x1 * (b * b + b * x2);
            let den = b * b + b * x3 + x4;
            (a - num / den).powi(2)
        })
        .sum();
    -z
}

fn f16(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    let z = 4.0 * x1.powi(2) - 2.1 * x1.powi(4) + x1.powi(6) / 3.0 + x1 * x2 - 4.0 * x2.powi(2)
        + 4.0 * x2.powi(4);
    -z
}

fn f17(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    let z = (x2 - 5.1 * x1.powi(2) / (4.0 * PI * PI) + 5.0 * x1 / PI - 6.0).powi(2)
        + 10.0 * (1.0 - 1.0 / (8.0 * PI)) * x1.cos()
        + 10.0;
    -z
}

fn f18(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    let t1 = 1.0
        + (x1 + x2 + 1.0).powi(2)
            * (19.0 - 14.0 * x1 + 3.0 * x1 * x1 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2 * x2);
    let t2 = 30.0
        + (2.0 * x1 - 3.0 * x2).powi(2)
            * (18.0 - 32.0 * x1 + 12.0 * x1 * x1 + 48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2 * x2);
    -(t1 * t2)
}

pub const HARTMAN_C: [f64; 4] = [1.0, 1.2, 3.0, 3.2];

pub const H3_A: [[f64; 3]; 4] = [
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
    [3.0, 10.0, 30.0],
    [0.1, 10.0, 35.0],
];

pub const H3_P: [[f64; 3]; 4] = [
    [0.36890, 0.1170, 0.2673],
    [0.46990, 0.4387, 0.7470],
    [0.10910, 0.8732, 0.5547],
    [0.03815, 0.5743, 0.8828],
];

pub const H6_A: [[f64; 6]; 4] = [
    [10.0, 3.00, 17.0, 3.5, 1.7, 8.0],
    [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
    [3.00, 3.50, 1.70, 10.0, 17.0, 8.0],
    [17.0, 8.00, 0.05, 10.0, 0.1, 14.0],
];

pub const H6_P: [[f64; 6]; 4] = [
    [0.13120, 0.1696, 0.5569, 0.01240, 0.8283, 0.5886],
    [0.23290, 0.4135, 0.8307, 0.37360, 0.1004, 0.9991],
    [0.23480, 0.1415, 0.3522, 0.28830, 0.3047, 0.6650],
    [0.40470, 0.8828, 0.8732, 0.57430, 0.1091, 0.0381],
];

fn hartman<const N: usize>(x: &[f64], a: &[[f64; N]; 4], p: &[[f64; N]; 4]) -> f64 {
    (0..4)
        .map(|j| {
            let sum: f64 = (0..N).map(|i| a[j][i] * (x[i] - p[j][i]).powi(2)).sum();
            HARTMAN_C[j] * (-sum).exp()
        })
        .sum()
}

/// Shekel rows `(a_j, c_j)`; F21, F22 and F23 use the first 5, 7 and 10.
pub const SHEKEL: [([f64; 4], f64); 10] = [
    ([4.0, 4.0, 4.0, 4.0], 0.1),
    ([1.0, 1.0, 1.0, 1.0], 0.2),
    ([8.0, 8.0, 8.0, 8.0], 0.2),
    ([6.0, 6.0, 6.0, 6.0], 0.4),
    ([3.0, 7.0, 3.0, 7.0], 0.4),
    ([2.0, 9.0, 2.0, 9.0], 0.6),
    ([5.0, 5.0, 3.0, 3.0], 0.3),
    ([8.0, 1.0, 8.0, 1.0], 0.7),
    ([6.0, 2.0, 6.0, 2.0], 0.5),
    ([7.0, 3.6, 7.0, 3.6], 0.5),
];

fn shekel(x: &[f64], m: usize) -> f64 {
    SHEKEL[..m]
        .iter()
        .map(|(a, c)| {
            let sum: f64 = (0..4).map(|i| (x[i] - a[i]).powi(2)).sum();
            1.0 / (sum + c)
        })
        .sum()
}
