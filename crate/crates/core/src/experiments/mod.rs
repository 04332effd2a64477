//! Problem presets, error diagnostics, convergence studies and their file formats.

pub mod config;
pub mod convergence;
pub mod diagnostics;
pub mod io;
pub mod problems;

pub use config::{RunConfig, SuiteConfig};
pub use convergence::{
    convergence_suite, convergence_tables, ConvergenceRow, ConvergenceStudy, ConvergenceTable, Quantity,
};
pub use diagnostics::{coarsen, crossing_time, error_norms, ErrorNorms, NormWeight};
pub use problems::{list_problems, ProblemSpec};
