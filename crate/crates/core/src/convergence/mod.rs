//! Norm bounds for the symmetric exponents and the convergence domains
//! they certify.
//!
//! Both recursions run over odd degrees only. Tables are computed in plain
//! `f64` and recomputed in log space as soon as any entry leaves
//! `[1e-300, 1e300]`.

mod bounds;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use bounds::{check_depth, crude_seeds, refined_seeds, run_recursion};

/// Default number of trailing ratios averaged by the tail rule.
pub const DEFAULT_TAIL_WINDOW: usize = 10;
/// Bisection stops once the bracket on `y_max` is this narrow.
pub const BISECTION_TOL: f64 = 1e-3;
/// Largest `y` probed by [`boundary_scan`].
pub const Y_CAP: f64 = 64.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("depth must be odd and at least {min}, got {k_max}")]
    BadDepth { k_max: usize, min: usize },
    #[error("norms must be finite and non-negative, got ({x}, {y})")]
    BadNorms { x: f64, y: f64 },
    #[error("tail window must be positive")]
    BadWindow,
}

/// Coefficients `ρ_k` for odd `k = 3..=k_max`, kept as logarithms so that
/// deep tables never underflow.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundSequence {
    ln_values: Vec<f64>,
    log_space: bool,
}

impl BoundSequence {
    /// `(k, ρ_k)`; values below the `f64` range read as 0.
    pub fn values(&self) -> Vec<(usize, f64)> {
        self.ln_values
            .iter()
            .enumerate()
            .map(|(i, l)| (3 + 2 * i, l.exp()))
            .collect()
    }

    pub fn ln_values(&self) -> &[f64] {
        &self.ln_values
    }

    /// `ρ_k` for odd `k ≥ 3`.
    pub fn get(&self, k: usize) -> Option<f64> {
        if k < 3 || k % 2 == 0 {
            return None;
        }
        self.ln_values.get((k - 3) / 2).map(|l| l.exp())
    }

    /// Whether the table had to be recomputed in log space.
    pub fn used_log_space(&self) -> bool {
        self.log_space
    }

    /// Geometric mean of the last `window` ratios `ρ_{k+2}/ρ_k`, or `None`
    /// when every entry is zero. The window shrinks to the available ratios
    /// for short sequences.
    pub fn ratio_tail(&self, window: usize) -> Option<f64> {
        let n = self.ln_values.len();
        let last = *self.ln_values.last()?;
        if last == f64::NEG_INFINITY {
            return None;
        }
        let w = window.min(n - 1);
        if w == 0 {
            return None;
        }
        Some(((last - self.ln_values[n - 1 - w]) / w as f64).exp())
    }
}

/// Result of the `(x+y)`-homogeneous recursion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrudeEstimate {
    /// `(k, r_k)` for odd `k`.
    pub r: Vec<(usize, f64)>,
    /// Tail estimate of `r_{k+2}/r_k`.
    pub r_limit: f64,
    /// `1/sqrt(r_limit)`: the series converges for `λ(x+y)` below it.
    pub threshold: f64,
    pub log_space: bool,
}

/// `r_k` from `s_{1,ℓ} = 1/ℓ!`, `s̃_{1,ℓ} = 1/(2ℓ!)`, with the limit ratio
/// and the resulting bound on `λ(x+y)`.
pub fn crude_r_sequence(k_max: usize) -> Result<CrudeEstimate, BoundsError> {
    check_depth(k_max, 21)?;
    let (ln_values, log_space) = run_recursion(&crude_seeds(k_max - 1), k_max);
    let seq = BoundSequence {
        ln_values,
        log_space,
    };
    let r_limit = seq
        .ratio_tail(DEFAULT_TAIL_WINDOW)
        .expect("crude coefficients are positive");
    Ok(CrudeEstimate {
        r: seq.values(),
        r_limit,
        threshold: 1.0 / r_limit.sqrt(),
        log_space,
    })
}

fn check_norms(x: f64, y: f64) -> Result<(), BoundsError> {
    if x.is_finite() && y.is_finite() && x >= 0.0 && y >= 0.0 {
        Ok(())
    } else {
        Err(BoundsError::BadNorms { x, y })
    }
}

/// Bounds `δ_k ≥ ‖C_k‖` for `‖X‖ ≤ x`, `‖Y‖ ≤ y`, odd `k = 3..=k_max`.
pub fn refined_deltas(x: f64, y: f64, k_max: usize) -> Result<BoundSequence, BoundsError> {
    check_depth(k_max, 5)?;
    check_norms(x, y)?;
    let (ln_values, log_space) = run_recursion(&refined_seeds(x, y, k_max - 1), k_max);
    Ok(BoundSequence {
        ln_values,
        log_space,
    })
}

/// Outcome of the ratio test at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceVerdict {
    pub converges: bool,
    /// Tail estimate of `δ_{k+2}/δ_k`; 0 when every `δ_k` vanishes.
    pub ratio_tail: f64,
}

pub fn converges_with_window(
    x: f64,
    y: f64,
    k_max: usize,
    window: usize,
) -> Result<ConvergenceVerdict, BoundsError> {
    if window == 0 {
        return Err(BoundsError::BadWindow);
    }
    let seq = refined_deltas(x, y, k_max)?;
    Ok(match seq.ratio_tail(window) {
        None => ConvergenceVerdict {
            converges: true,
            ratio_tail: 0.0,
        },
        Some(r) => ConvergenceVerdict {
            converges: r < 1.0,
            ratio_tail: r,
        },
    })
}

/// Ratio test on the `δ_k` with the default tail window.
pub fn converges(x: f64, y: f64, k_max: usize) -> Result<bool, BoundsError> {
    Ok(converges_with_window(x, y, k_max, DEFAULT_TAIL_WINDOW)?.converges)
}

/// One boundary sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryPoint {
    pub x: f64,
    pub y_max: f64,
    /// The search hit [`Y_CAP`] without leaving the domain.
    pub capped: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DomainBoundary {
    pub depth: usize,
    pub mirrored: bool,
    pub points: Vec<BoundaryPoint>,
}

/// Largest `y` (to [`BISECTION_TOL`]) with `test(y)` true, assuming the
/// accepted set is an interval starting at 0.
fn bisect_y(test: impl Fn(f64) -> Result<bool, BoundsError>) -> Result<(f64, bool), BoundsError> {
    let mut lo = 0.0;
    let mut hi = 1.0;
    while test(hi)? {
        lo = hi;
        if hi >= Y_CAP {
            return Ok((Y_CAP, true));
        }
        hi *= 2.0;
    }
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if test(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, false))
}

/// Upper boundary `y_max(x)` of the certified domain along `x_grid`. With
/// `mirror`, the domain is united with its reflection `x ↔ y` and the
/// pointwise larger boundary is reported. Points are evaluated in parallel;
/// the output follows the grid order.
pub fn boundary_scan(
    x_grid: &[f64],
    k_max: usize,
    mirror: bool,
) -> Result<DomainBoundary, BoundsError> {
    check_depth(k_max, 5)?;
    for &x in x_grid {
        check_norms(x, 0.0)?;
    }
    let points = x_grid
        .par_iter()
        .map(|&x| {
            let (y1, c1) = bisect_y(|y| converges(x, y, k_max))?;
            if !mirror {
                return Ok(BoundaryPoint {
                    x,
                    y_max: y1,
                    capped: c1,
                });
            }
            let (y2, c2) = bisect_y(|y| converges(y, x, k_max))?;
            let (y_max, capped) = if y2 > y1 { (y2, c2) } else { (y1, c1) };
            Ok(BoundaryPoint { x, y_max, capped })
        })
        .collect::<Result<Vec<_>, BoundsError>>()?;
    Ok(DomainBoundary {
        depth: k_max,
        mirrored: mirror,
        points,
    })
}
