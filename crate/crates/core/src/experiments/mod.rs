//! Experiment harness: error curves for random and commuting-exponential
//! matrix pairs, the convergence-domain scan, and the exact checks on the
//! bundled structure-constant algebras. Output is CSV with a versioned
//! header comment; nothing here renders plots.

mod boundary;
mod config;
mod examples;
mod fig2;
mod fig3;
pub mod verify;

use std::path::Path;

use thiserror::Error;

use crate::backends::{MatrixError, ScError, ScViolation};
use crate::convergence::BoundsError;
use crate::engine::EngineError;

pub use boundary::{boundary_csv, run_boundary, BoundaryReport, CRUDE_DEPTH, MARKED_POINTS};
pub use config::{ExperimentConfig, ExperimentId};
pub use examples::{run_examples, run_examples_from, ExampleCheck, ExamplesReport};
pub use fig2::{fig2_csv, run_fig2, Fig2Row};
pub use fig3::{fig3_csv, run_fig3, Fig3Row};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    StructureConstants(#[from] ScError),
    #[error("structure constants rejected: {0}")]
    Violation(#[from] ScViolation),
}

impl ExperimentError {
    pub(crate) fn io(path: &Path, e: std::io::Error) -> Self {
        ExperimentError::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        }
    }
}

/// `# lie-split v<version> experiment=<id> seed=<n>`
pub fn csv_header(experiment: ExperimentId, seed: u64) -> String {
    format!("# lie-split v{VERSION} experiment={experiment} seed={seed}\n")
}

/// Writes `text` to `path`, reporting failures with the path.
pub fn write_output(path: &Path, text: &str) -> Result<(), ExperimentError> {
    std::fs::write(path, text).map_err(|e| ExperimentError::io(path, e))
}

/// Shortest round-trip decimal form, `inf` for infinity.
pub(crate) fn fmt_f64(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else {
        format!("{v:e}")
    }
}
