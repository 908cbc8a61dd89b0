//! Harness that runs the parameter-free CFO search over the 23-function
//! suite, writes a JSON report with optional CSV diagnostics, and checks a
//! report against a reference table.

pub mod error;
pub mod reference;
pub mod report;
pub mod runner;

pub use error::{BenchError, Result};
pub use reference::{compare, reference_from_json, ReferenceRow, RowVerdict, Verdict};
pub use report::{from_json, summary_table, to_json, without_timing, ReportRow};
pub use runner::{
    parse_selection, run_function, run_suite, write_diagnostics, write_report, BoundsOverride,
    FunctionRun, RunOptions,
};
