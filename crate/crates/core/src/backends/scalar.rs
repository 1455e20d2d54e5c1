use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::exact_arith::Rational;

/// Real scalar used by the matrix backend. Implemented for `f64` and for the
/// double-double type `TwoFloat` (about 32 significant digits).
///
/// There is deliberately no general division: `TwoFloat / TwoFloat` in
/// twofloat 0.8 loses the low word, while division by an `f64` is accurate.
pub trait Real:
    Copy
    + Debug
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const PRECISION: Precision;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn from_rational(q: &Rational) -> Self;
    fn div_f64(self, d: f64) -> Self;
    /// Unit roundoff of the type, as an `f64`.
    fn epsilon() -> f64;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn pi() -> Self;
    fn is_finite(self) -> bool;
}

/// Scalar precision level for a numeric run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    #[default]
    Double,
    Extended,
}

impl std::str::FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "double" => Ok(Precision::Double),
            "extended" => Ok(Precision::Extended),
            other => Err(format!(
                "unknown precision {other:?} (expected double|extended)"
            )),
        }
    }
}

impl std::fmt::Display for Precision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Precision::Double => "double",
            Precision::Extended => "extended",
        })
    }
}

impl Real for f64 {
    const PRECISION: Precision = Precision::Double;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn from_rational(q: &Rational) -> Self {
        q.to_f64()
    }
    fn div_f64(self, d: f64) -> Self {
        self / d
    }
    fn epsilon() -> f64 {
        f64::EPSILON / 2.0
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl Real for TwoFloat {
    const PRECISION: Precision = Precision::Extended;

    fn zero() -> Self {
        TwoFloat::from(0.0)
    }
    fn one() -> Self {
        TwoFloat::from(1.0)
    }
    fn from_f64(x: f64) -> Self {
        TwoFloat::from(x)
    }
    fn to_f64(self) -> f64 {
        self.hi() + self.lo()
    }
    fn from_rational(q: &Rational) -> Self {
        let hi = q.to_f64();
        if !hi.is_finite() {
            return TwoFloat::from(hi);
        }
        let residual = q - &Rational::from_f64(hi).expect("finite");
        TwoFloat::new_add(hi, residual.to_f64())
    }
    fn div_f64(self, d: f64) -> Self {
        self / d
    }
    fn epsilon() -> f64 {
        // 2^-104
        4.930380657631324e-32
    }
    fn abs(self) -> Self {
        TwoFloat::abs(&self)
    }
    fn sqrt(self) -> Self {
        TwoFloat::sqrt(self)
    }
    fn pi() -> Self {
        twofloat::consts::PI
    }
    fn is_finite(self) -> bool {
        self.hi().is_finite() && self.lo().is_finite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extended_rational_conversion_keeps_low_word() {
        let third = Rational::new(1, 3).unwrap();
        let t = TwoFloat::from_rational(&third);
        let err = (t * TwoFloat::from(3.0) - TwoFloat::one()).abs();
        assert!(err.to_f64() < 1e-31, "{err:?}");
        assert_eq!(f64::from_rational(&third), 1.0 / 3.0);
    }

    #[test]
    fn extended_sqrt_and_pi() {
        let s6 = TwoFloat::from_f64(6.0).sqrt();
        let err = (s6 * s6 - TwoFloat::from_f64(6.0)).abs();
        assert!(err.to_f64() < 1e-30);
        let pi = TwoFloat::pi();
        assert_eq!(pi.hi(), std::f64::consts::PI);
        assert!((pi.lo() - 1.2246467991473532e-16).abs() < 1e-31);
    }

    #[test]
    fn extended_division_by_double() {
        let third = TwoFloat::one().div_f64(3.0);
        let err = (third * TwoFloat::from(3.0) - TwoFloat::one()).abs();
        assert!(err.to_f64() < 1e-31, "{third:?}");
    }
}
