use thiserror::Error;

/// Errors raised by the optimizer and the benchmark suite.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CfoError {
    #[error("invalid bounds for dimension {dim}: min {min} must be strictly less than max {max}")]
    InvalidBounds { dim: usize, min: f64, max: f64 },

    #[error("decision space needs at least one dimension")]
    EmptySpace,

    #[error("bounds vectors differ in length: {min_len} minima, {max_len} maxima")]
    BoundsLengthMismatch { min_len: usize, max_len: usize },

    #[error("dimension mismatch: expected {expected} coordinates, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("probes per dimension must be at least 2, got {0}")]
    InvalidProbesPerDim(usize),

    #[error("gamma must lie in [0, 1], got {0}")]
    InvalidGamma(f64),

    #[error("unknown benchmark function `{0}`")]
    UnknownFunction(String),

    #[error("function {0} is noisy and requires a noise source")]
    MissingNoise(String),

    #[error("internal parameters differ from the hardwired defaults; mark them experimental to use them")]
    NonDefaultParams,

    #[error("average distance needs at least two probes, got {0}")]
    TooFewProbes(usize),

    #[error("step {step} has not been evaluated (last evaluated step: {last})")]
    StepNotEvaluated { step: usize, last: usize },

    #[error("objective evaluation failed: {0}")]
    Objective(String),
}

pub type Result<T, E = CfoError> = std::result::Result<T, E>;
