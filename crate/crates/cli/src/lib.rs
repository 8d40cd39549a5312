//! Batch front end: runs the proposition suites and the two pipelines and
//! writes a deterministic JSON or CSV report.
//!
//! Exit codes: 0 when every check passes, 1 on any failure, 2 on a
//! configuration error, 3 when certified comparisons stayed undecided.

pub mod config;
pub mod report;
mod run;

pub use config::{Cli, CommandKind, ConfigError, Format, RunConfig, OUT_DIR_ENV};
pub use report::Report;
pub use run::{execute, exit_code, run};

/// Exit code for configuration and I/O errors.
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("invalid input: {0}")]
    Core(#[from] semiformal::Error),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot encode report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot encode report: {0}")]
    Csv(#[from] csv::Error),
}
