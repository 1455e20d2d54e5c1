//! The symmetric term recursion over any ad-module, the series-peeling
//! oracles, the standard and left-oriented formulas, and truncated matrix
//! products.

mod peeling;
mod psi;
mod seeds;
mod symmetric;

use thiserror::Error;

use crate::backends::MatrixError;
use crate::lie_symbolic::SeriesError;

pub use crate::lie_symbolic::AdModule;
pub use peeling::{std_terms, std_terms_left, sym_oracle};
pub use psi::{psi_std, psi_std_sequence, psi_sym, psi_sym_sequence};
pub use seeds::{seed_f, seed_g};
pub use symmetric::{
    sym_terms, sym_terms_swapped, sym_terms_with, CorrectionPlacement, SymTermTable,
};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("maximum degree must be at least {min}, got {got}")]
    DegreeTooSmall { min: usize, got: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}
