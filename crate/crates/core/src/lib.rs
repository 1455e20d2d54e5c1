//! Symmetric Zassenhaus factorization of `exp(X+Y)`.
//!
//! The crate generates the exponents of
//! `e^{X/2} e^{Y/2} e^{C3} e^{C5} ... e^{C5} e^{C3} e^{Y/2} e^{X/2}` exactly
//! (over the free Lie algebra or a structure-constant algebra) and numerically
//! (over dense matrices), computes sufficient convergence domains from norm
//! bound recursions, and reproduces the comparison experiments against the
//! standard Zassenhaus product.

pub mod backends;
pub mod convergence;
pub mod engine;
pub mod exact_arith;
pub mod experiments;
pub mod lie_symbolic;
