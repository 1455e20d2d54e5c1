//! Exact scalar rings: arbitrary-precision rationals and dense univariate
//! polynomials over them.

mod rational;
mod unipoly;

pub use rational::{rat_arith, RatOp, Rational};
pub use unipoly::{upoly_mul, UniPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}
