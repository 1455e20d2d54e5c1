//! Truncated factorizations evaluated on matrices.

use super::peeling::std_terms;
use super::symmetric::sym_terms;
use super::EngineError;
use crate::backends::{expm, Matrix, MatrixAlgebra, MatrixError, Real};
use crate::lie_symbolic::Commutator;

fn scaled_inputs<S: Real>(
    x: &Matrix<S>,
    y: &Matrix<S>,
    lambda: S,
) -> Result<(Matrix<S>, Matrix<S>), EngineError> {
    if x.dim() != y.dim() {
        return Err(MatrixError::DimensionMismatch(x.dim(), y.dim()).into());
    }
    Ok((x.scale(lambda), y.scale(lambda)))
}

/// `Ψ_n` for `n = 1, 3, 5, …, ≤ n_max`. `Ψ_1` is the Strang product
/// `e^{λX/2} e^{λY} e^{λX/2}`; for odd `n ≥ 3`
/// `Ψ_n = e^{λX/2} e^{λY/2} e^{C3} ⋯ e^{2Cn} ⋯ e^{C3} e^{λY/2} e^{λX/2}`
/// with `C_k` the exponents of `(λX, λY)`.
///
/// Outside the convergence domain the exponents grow without bound; the
/// sequence stops before the first degree whose factor or product is not
/// finite.
pub fn psi_sym_sequence<S: Real>(
    x: &Matrix<S>,
    y: &Matrix<S>,
    lambda: S,
    n_max: usize,
) -> Result<Vec<(usize, Matrix<S>)>, EngineError> {
    let (lx, ly) = scaled_inputs(x, y, lambda)?;
    let half = S::from_f64(0.5);
    let ex = expm(&lx.scale(half))?;
    let ey = expm(&ly.scale(half))?;
    let mut left = ex.mul(&ey);
    let mut right = ey.mul(&ex);
    let mut out = vec![(1, left.mul(&right))];
    if n_max < 3 {
        return Ok(out);
    }
    let alg = MatrixAlgebra::<S>::new(x.dim());
    let terms = sym_terms(&Commutator(&alg), &lx, &ly, n_max)?;
    for (k, c) in terms.iter() {
        let Some(e) = finite_expm(c)? else { break };
        let p = left.mul(&e.mul(&e)).mul(&right);
        if !p.is_finite() {
            break;
        }
        out.push((k, p));
        left = left.mul(&e);
        right = e.mul(&right);
    }
    Ok(out)
}

/// `None` when `c` or its exponential is not finite.
fn finite_expm<S: Real>(c: &Matrix<S>) -> Result<Option<Matrix<S>>, EngineError> {
    match expm(c) {
        Ok(e) => Ok(Some(e)),
        Err(MatrixError::NonFinite) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn last_at<S: Real>(mut seq: Vec<(usize, Matrix<S>)>, n: usize) -> Result<Matrix<S>, EngineError> {
    match seq.pop() {
        Some((k, p)) if k == n => Ok(p),
        _ => Err(MatrixError::NonFinite.into()),
    }
}

/// The symmetric truncated product at the largest odd degree `≤ n`.
pub fn psi_sym<S: Real>(
    x: &Matrix<S>,
    y: &Matrix<S>,
    lambda: S,
    n: usize,
) -> Result<Matrix<S>, EngineError> {
    if n < 3 {
        return Err(EngineError::DegreeTooSmall { min: 3, got: n });
    }
    let seq = psi_sym_sequence(x, y, lambda, n)?;
    last_at(seq, n - (1 - n % 2))
}

/// `e^{λX} e^{λY} e^{C_2} ⋯ e^{C_n}` for `n = 1..=n_max` (`n = 1` is the
/// bare product), with the standard exponents of `(λX, λY)`. Stops early
/// like [`psi_sym_sequence`].
pub fn psi_std_sequence<S: Real>(
    x: &Matrix<S>,
    y: &Matrix<S>,
    lambda: S,
    n_max: usize,
) -> Result<Vec<(usize, Matrix<S>)>, EngineError> {
    let (lx, ly) = scaled_inputs(x, y, lambda)?;
    let mut p = expm(&lx)?.mul(&expm(&ly)?);
    let mut out = vec![(1, p.clone())];
    if n_max < 2 {
        return Ok(out);
    }
    let alg = MatrixAlgebra::<S>::new(x.dim());
    let terms = std_terms(&alg, &lx, &ly, n_max)?;
    for (k, c) in terms {
        let Some(e) = finite_expm(&c)? else { break };
        p = p.mul(&e);
        if !p.is_finite() {
            break;
        }
        out.push((k, p.clone()));
    }
    Ok(out)
}

pub fn psi_std<S: Real>(
    x: &Matrix<S>,
    y: &Matrix<S>,
    lambda: S,
    n: usize,
) -> Result<Matrix<S>, EngineError> {
    let seq = psi_std_sequence(x, y, lambda, n)?;
    last_at(seq, n.max(1))
}
