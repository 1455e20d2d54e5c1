use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ArithError;

/// Exact rational number with arbitrary-precision parts.
///
/// Always held in lowest terms with a positive denominator; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

/// Binary operation selector for [`rat_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Unary; the second operand is ignored.
    Neg,
}

/// Applies `op` to `a` and `b`. Only `Div` can fail.
pub fn rat_arith(op: RatOp, a: &Rational, b: &Rational) -> Result<Rational, ArithError> {
    match op {
        RatOp::Add => Ok(a + b),
        RatOp::Sub => Ok(a - b),
        RatOp::Mul => Ok(a * b),
        RatOp::Div => a.checked_div(b),
        RatOp::Neg => Ok(-a),
    }
}

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, ArithError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `1/n` for a nonzero machine integer.
    pub fn inv_int(n: u64) -> Self {
        assert!(n != 0, "inv_int(0)");
        Rational(BigRational::new(BigInt::one(), BigInt::from(n)))
    }

    /// `1/n!`
    pub fn inv_factorial(n: u32) -> Self {
        let mut f = BigInt::one();
        for i in 2..=n {
            f *= i;
        }
        Rational(BigRational::new(BigInt::one(), f))
    }

    /// `2^e` for any integer exponent.
    pub fn pow2(e: i32) -> Self {
        let p = BigInt::one() << e.unsigned_abs();
        if e >= 0 {
            Rational(BigRational::from_integer(p))
        } else {
            Rational(BigRational::new(BigInt::one(), p))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational, ArithError> {
        Rational::one().checked_div(self)
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn pow(&self, e: u32) -> Rational {
        let mut acc = Rational::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Nearest `f64` (correctly rounded).
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact value of a finite float.
    pub fn from_f64(x: f64) -> Option<Rational> {
        BigRational::from_float(x).map(Rational)
    }

    /// Internal-invariant check: reduced, positive denominator, zero is 0/1.
    pub fn is_canonical(&self) -> bool {
        use num_integer::Integer;
        let n = self.0.numer();
        let d = self.0.denom();
        d.is_positive() && n.gcd(d).is_one() && (!n.is_zero() || d.is_one())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| ArithError::Parse(s.to_string()))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse(n)?, parse(d)?),
            None => Ok(Rational(BigRational::from_integer(parse(s)?))),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn arith_examples() {
        assert_eq!(rat_arith(RatOp::Add, &r(1, 2), &r(1, 3)).unwrap(), r(5, 6));
        assert_eq!(
            rat_arith(RatOp::Mul, &r(2, 4), &r(1, 1))
                .unwrap()
                .to_string(),
            "1/2"
        );
        assert_eq!(
            rat_arith(RatOp::Div, &r(1, 1), &r(48, 1)).unwrap(),
            r(1, 48)
        );
        assert_eq!(
            rat_arith(RatOp::Neg, &r(3, 4), &Rational::zero()).unwrap(),
            r(-3, 4)
        );
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            rat_arith(RatOp::Div, &r(1, 2), &Rational::zero()),
            Err(ArithError::DivisionByZero)
        );
        assert!(Rational::new(1, 0).is_err());
        assert!("3/0".parse::<Rational>().is_err());
    }

    #[test]
    fn zero_is_unique() {
        let z = r(0, -17);
        assert_eq!(z.to_string(), "0");
        assert!(z.is_canonical());
        assert_eq!(z, Rational::zero());
    }

    #[test]
    fn string_round_trip() {
        for s in ["0", "-7", "1/48", "-3/11840"] {
            assert_eq!(s.parse::<Rational>().unwrap().to_string(), s);
        }
        assert_eq!("6/-4".parse::<Rational>().unwrap().to_string(), "-3/2");
        assert!("x/2".parse::<Rational>().is_err());
    }

    #[test]
    fn helpers() {
        assert_eq!(Rational::inv_factorial(5), r(1, 120));
        assert_eq!(Rational::pow2(-3), r(1, 8));
        assert_eq!(Rational::pow2(4), r(16, 1));
        assert_eq!(r(-2, 3).pow(3), r(-8, 27));
        let big = Rational::inv_factorial(25) * Rational::pow2(-40);
        assert!(big.is_canonical());
        assert_eq!(Rational::from_f64(0.375).unwrap(), r(3, 8));
    }
}
