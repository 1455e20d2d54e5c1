use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Rational;

/// Dense univariate polynomial in the formal parameter `t` with rational
/// coefficients, ascending powers. Empty means zero; otherwise the last
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    fn normalize(mut self) -> Self {
        while self.coeffs.last().is_some_and(Rational::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The parameter `t` itself.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly { coeffs: vec![c] }.normalize()
    }

    /// `c * t^power`
    pub fn monomial(c: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        UniPoly { coeffs }.normalize()
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        UniPoly { coeffs }.normalize()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        let coeffs = (0..n)
            .map(|i| {
                f(
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        UniPoly { coeffs }.normalize()
    }
}

/// Convolution product of two polynomials.
pub fn upoly_mul(p: &UniPoly, q: &UniPoly) -> UniPoly {
    if p.is_zero() || q.is_zero() {
        return UniPoly::zero();
    }
    let mut coeffs = vec![Rational::zero(); p.coeffs.len() + q.coeffs.len() - 1];
    for (i, a) in p.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.coeffs.iter().enumerate() {
            coeffs[i + j] += &(a * b);
        }
    }
    UniPoly { coeffs }.normalize()
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        upoly_mul(self, rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c} t")?,
                _ => write!(f, "{c} t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(c.iter().map(|&x| Rational::from_int(x)).collect())
    }

    #[test]
    fn mul_examples() {
        assert_eq!(upoly_mul(&p(&[1, 1]), &p(&[1, -1])), p(&[1, 0, -1]));
        assert!(upoly_mul(&UniPoly::zero(), &p(&[3, 2])).is_zero());
        assert_eq!(upoly_mul(&UniPoly::t(), &p(&[0, 0, 1])), p(&[0, 0, 0, 1]));
    }

    #[test]
    fn trailing_zeros_stripped() {
        let q = p(&[1, 2, 0, 0]);
        assert_eq!(q.degree(), Some(1));
        assert_eq!(&p(&[0, 1]) - &UniPoly::t(), UniPoly::zero());
        assert_eq!(UniPoly::zero().coeffs().len(), 0);
    }

    #[test]
    fn eval_and_display() {
        let q = p(&[1, 0, -3]);
        assert_eq!(q.eval(&Rational::from_int(2)), Rational::from_int(-11));
        assert_eq!(q.to_string(), "1 + -3 t^2");
    }
}
