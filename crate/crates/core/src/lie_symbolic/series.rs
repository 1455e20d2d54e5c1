use thiserror::Error;

use super::algebra::AssocAlgebra;
use crate::exact_arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
}

/// Power series in `λ` with coefficients in an associative algebra,
/// truncated after `λ^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> TruncSeries<E> {
    pub fn zero<A: AssocAlgebra<Elem = E>>(alg: &A, order: usize) -> Self {
        TruncSeries {
            coeffs: vec![alg.zero(); order + 1],
        }
    }

    pub fn unit<A: AssocAlgebra<Elem = E>>(alg: &A, order: usize) -> Self {
        let mut s = Self::zero(alg, order);
        s.coeffs[0] = alg.one();
        s
    }

    /// Missing trailing coefficients are zero; extra ones are dropped.
    pub fn from_coeffs<A: AssocAlgebra<Elem = E>>(
        alg: &A,
        mut coeffs: Vec<E>,
        order: usize,
    ) -> Self {
        coeffs.truncate(order + 1);
        while coeffs.len() < order + 1 {
            coeffs.push(alg.zero());
        }
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &E {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// Truncated Cauchy product `self * other`.
    pub fn mul<A: AssocAlgebra<Elem = E>>(
        &self,
        alg: &A,
        other: &Self,
    ) -> Result<Self, SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch(self.order(), other.order()));
        }
        let n = self.order();
        let nz_a: Vec<bool> = self.coeffs.iter().map(|c| !alg.is_zero(c)).collect();
        let nz_b: Vec<bool> = other.coeffs.iter().map(|c| !alg.is_zero(c)).collect();
        let one = Rational::one();
        let mut out = Self::zero(alg, n);
        for i in 0..=n {
            if !nz_a[i] {
                continue;
            }
            for j in 0..=(n - i) {
                if !nz_b[j] {
                    continue;
                }
                let p = alg.mul(&self.coeffs[i], &other.coeffs[j]);
                alg.add_scaled(&mut out.coeffs[i + j], &one, &p);
            }
        }
        Ok(out)
    }

    /// `exp(λ^k c) = Σ_j λ^{kj} c^j / j!`, truncated.
    pub fn exp_factor<A: AssocAlgebra<Elem = E>>(alg: &A, c: &E, k: usize, order: usize) -> Self {
        assert!(k >= 1, "exp_factor needs k >= 1");
        let mut s = Self::unit(alg, order);
        if alg.is_zero(c) {
            return s;
        }
        let mut power = alg.one();
        let mut j = 1usize;
        while k * j <= order {
            power = alg.mul(&power, c);
            s.coeffs[k * j] = alg.scale(&power, &Rational::inv_factorial(j as u32));
            j += 1;
        }
        s
    }
}

/// Product of a sequence of series, left to right.
pub fn series_product<A: AssocAlgebra>(
    alg: &A,
    factors: &[TruncSeries<A::Elem>],
    order: usize,
) -> Result<TruncSeries<A::Elem>, SeriesError> {
    factors
        .iter()
        .try_fold(TruncSeries::unit(alg, order), |acc, f| acc.mul(alg, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_symbolic::algebra::{AssocAlgebra, LinearSpace, RationalField};
    use crate::lie_symbolic::assoc::{AssocPoly, FreeAssoc};
    use crate::lie_symbolic::tree::Generator;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn scalar_product() {
        let f = RationalField;
        let s = TruncSeries::from_coeffs(&f, vec![q(1, 1), q(3, 1)], 2);
        let t = TruncSeries::from_coeffs(&f, vec![q(1, 1), q(-3, 1)], 2);
        let p = s.mul(&f, &t).unwrap();
        assert_eq!(p.coeffs(), &[q(1, 1), q(0, 1), q(-9, 1)]);
        assert_eq!(s.mul(&f, &TruncSeries::unit(&f, 2)).unwrap(), s);
    }

    #[test]
    fn order_mismatch() {
        let f = RationalField;
        let a = TruncSeries::unit(&f, 2);
        let b = TruncSeries::unit(&f, 3);
        assert_eq!(a.mul(&f, &b), Err(SeriesError::OrderMismatch(2, 3)));
    }

    #[test]
    fn free_algebra_product() {
        let a = FreeAssoc::new(2);
        let x = a.generator(Generator::X);
        let y = a.generator(Generator::Y);
        let sx = TruncSeries::from_coeffs(&a, vec![a.one(), x], 2);
        let sy = TruncSeries::from_coeffs(&a, vec![a.one(), y], 2);
        let p = sx.mul(&a, &sy).unwrap();
        assert_eq!(p.coeff(1), &AssocPoly::parse("X + Y", 2).unwrap());
        assert_eq!(p.coeff(2), &AssocPoly::parse("XY", 2).unwrap());
    }

    #[test]
    fn exp_factor_examples() {
        let a = FreeAssoc::new(5);
        let x = a.generator(Generator::X);
        assert_eq!(
            TruncSeries::exp_factor(&a, &a.zero(), 2, 5),
            TruncSeries::unit(&a, 5)
        );
        let e = TruncSeries::exp_factor(&a, &x, 1, 2);
        assert_eq!(e.coeff(2), &AssocPoly::parse("1/2 XX", 5).unwrap());
        let e3 = TruncSeries::exp_factor(&a, &x, 3, 5);
        let nonzero: Vec<usize> = (0..=5).filter(|&i| !e3.coeff(i).is_zero()).collect();
        assert_eq!(nonzero, vec![0, 3]);
    }
}
