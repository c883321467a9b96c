//! Experiment orchestration: configuration, the (|α|, T) sweep, and CSV/SVG
//! emission.
//!
//! Everything the `jdr` binary does lives here so that library users and
//! integration tests can drive the same pipeline. Errors carry an exit-code
//! classification: `1` for usage/configuration problems, `2` for numerical
//! failures, `3` for I/O.

mod config;
mod csv;
mod plot;
mod sweep;

pub use config::{load_config, CodebookSource, SweepConfig, BUILTIN_PARITY_CODE};
pub use csv::{emit_csv, format_csv, parse_csv, CSV_HEADER};
pub use plot::{emit_plot, render_plot};
pub use sweep::{run_sweep, PointFailure, SweepRow};

use std::path::PathBuf;

use thiserror::Error;

/// Top-level failures of the experiment runner.
#[derive(Debug, Error)]
pub enum RunnerError {
    /// Bad CLI usage, config file, or input data (exit code 1).
    #[error("configuration error: {detail}")]
    Config { detail: String },
    /// A computation failed (exit code 2).
    #[error("numerical failure: {detail}")]
    Numerical { detail: String },
    /// A file could not be read or written (exit code 3).
    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    /// One or more sweep points failed; the rest completed (exit code 2).
    #[error("{} of {total} sweep points failed", failures.len())]
    SweepFailures {
        failures: Vec<PointFailure>,
        total: usize,
    },
}

impl RunnerError {
    /// Shorthand for a [`RunnerError::Config`].
    pub fn config(detail: impl Into<String>) -> Self {
        Self::Config {
            detail: detail.into(),
        }
    }

    /// Shorthand for a [`RunnerError::Numerical`].
    pub fn numerical(source: impl std::fmt::Display) -> Self {
        Self::Numerical {
            detail: source.to_string(),
        }
    }

    /// Shorthand for a [`RunnerError::Io`].
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code this failure maps to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config { .. } => 1,
            Self::Numerical { .. } | Self::SweepFailures { .. } => 2,
            Self::Io { .. } => 3,
        }
    }
}
