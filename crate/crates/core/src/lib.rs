//! Parameter-free Central Force Optimization (CFO).
//!
//! CFO is a deterministic global maximizer: probes are attracted toward
//! fitter probes by a gravity-like rule, the search space contracts around
//! the best point found, and an outer sweep over probe count and initial
//! layout replaces every user-tunable parameter. The only input is the
//! objective.
//!
//! ```
//! use cfo_core::{search, DecisionSpace, InternalParams};
//!
//! let space = DecisionSpace::uniform(2, -2.0, 2.0).unwrap();
//! let result = search(&space, &InternalParams::default(), |_| {
//!     |x: &[f64]| -(x[0] - 0.5).powi(2) - (x[1] + 0.25).powi(2)
//! })
//! .unwrap();
//! assert!(result.best_fitness > -1e-4);
//! ```

pub mod diagnostics;
pub mod engine;
pub mod error;
pub mod model;
pub mod objectives;

pub use diagnostics::{davg_at_step, extract_series, RunDiagnostics};
pub use engine::{
    best_so_far, compute_accelerations, compute_ipd, fitness_saturated, retrieve_errant_probes,
    run_inner, search, search_benchmark, search_grid, shrink_space, step_best, update_positions,
    FrepState, Objective, RunConfig, RunOutcome, ShrinkEvent,
};
pub use error::{CfoError, Result};
pub use model::{
    BestRecord, DecisionSpace, InternalParams, RunLogEntry, RunMatrices, SearchResult,
};
pub use objectives::{
    evaluate, function_spec, BenchmarkObjective, FunctionId, FunctionSpec, NoiseSource,
};
