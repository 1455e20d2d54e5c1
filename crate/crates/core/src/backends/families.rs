use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::{norm2, Matrix, MatrixError};
use super::scalar::Real;
use crate::exact_arith::Rational;

/// `n × n` matrix with i.i.d. uniform(−1, 1) entries from ChaCha8 seeded by
/// `seed`, rescaled to spectral norm `target_norm`.
pub fn random_matrix(n: usize, target_norm: f64, seed: u64) -> Result<Matrix<f64>, MatrixError> {
    if n == 0 {
        return Err(MatrixError::InvalidParameter(
            "dimension must be positive".into(),
        ));
    }
    if !(target_norm > 0.0 && target_norm.is_finite()) {
        return Err(MatrixError::InvalidParameter(format!(
            "target norm must be positive, got {target_norm}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = Matrix::from_fn(n, |_, _| rng.gen_range(-1.0..1.0));
    Ok(raw.scale(target_norm / norm2(&raw)))
}

/// The pair `X = π[[0, α], [−1/α, 0]]`,
/// `Y = π[[0, (10+4√6)α], [(−10+4√6)/α, 0]]`, whose exponentials multiply as
/// if they commuted although `[X, Y] ≠ 0`.
pub fn frechet_pair<S: Real>(alpha: &Rational) -> Result<(Matrix<S>, Matrix<S>), MatrixError> {
    if alpha.is_zero() {
        return Err(MatrixError::InvalidParameter(
            "alpha must be nonzero".into(),
        ));
    }
    let a = S::from_rational(alpha);
    let inv_a = S::from_rational(&alpha.recip().expect("nonzero"));
    let pi = S::pi();
    let r6 = S::from_f64(6.0).sqrt();
    let four = S::from_f64(4.0);
    let ten = S::from_f64(10.0);
    let zero = S::zero();
    let x = Matrix::from_rows(vec![vec![zero, pi * a], vec![-(pi * inv_a), zero]])?;
    let y = Matrix::from_rows(vec![
        vec![zero, pi * (ten + four * r6) * a],
        vec![-(pi * (ten - four * r6) * inv_a), zero],
    ])?;
    Ok((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::matrix::expm;

    #[test]
    fn random_matrix_norm_and_determinism() {
        let a = random_matrix(20, 0.5, 7).unwrap();
        assert!((norm2(&a) - 0.5).abs() < 1e-10);
        assert_eq!(a, random_matrix(20, 0.5, 7).unwrap());
        assert_ne!(a, random_matrix(20, 0.5, 8).unwrap());
        assert!(random_matrix(3, 0.0, 1).is_err());
    }

    #[test]
    fn frechet_pair_examples() {
        let alpha = Rational::new(1, 5).unwrap();
        let (x, y) = frechet_pair::<f64>(&alpha).unwrap();
        // The commonly quoted sizes 15.7205 and 12.8379 are Frobenius norms;
        // for these anti-diagonal matrices the spectral norm is the larger entry.
        assert!((x.norm_fro() - 15.7205).abs() < 1e-3, "{}", x.norm_fro());
        assert!((y.norm_fro() - 12.8379).abs() < 1e-3, "{}", y.norm_fro());
        let pi = std::f64::consts::PI;
        assert!((norm2(&x) - 5.0 * pi).abs() < 1e-12);
        assert!((norm2(&y) - pi * (10.0 + 4.0 * 6f64.sqrt()) / 5.0).abs() < 1e-12);
        assert!(norm2(&x.commutator(&y)) > 1.0);

        let lhs = expm(&x.add(&y)).unwrap();
        let rhs = expm(&x).unwrap().mul(&expm(&y).unwrap());
        assert!(norm2(&lhs.sub(&rhs)) <= 1e-10 * norm2(&lhs));

        let h = 0.5;
        let lhs = expm(&x.add(&y).scale(h)).unwrap();
        let rhs = expm(&x.scale(h)).unwrap().mul(&expm(&y.scale(h)).unwrap());
        assert!(norm2(&lhs.sub(&rhs)) > 1.0);

        assert!(frechet_pair::<f64>(&Rational::zero()).is_err());
    }
}
