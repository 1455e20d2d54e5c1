//! Minimal algebraic contracts shared by every backend.
//!
//! Backends are context objects (`&self`) so that algebras carrying data,
//! such as a structure-constant tensor or a matrix dimension, fit the same
//! shape as the free algebras.

use crate::exact_arith::Rational;

/// A vector space over the rationals.
pub trait LinearSpace {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Rational) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.scale(a, &Rational::from_int(-1))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// `acc += c * b`
    fn add_scaled(&self, acc: &mut Self::Elem, c: &Rational, b: &Self::Elem) {
        if c.is_zero() {
            return;
        }
        *acc = self.add(acc, &self.scale(b, c));
    }
}

/// A linear space with a bilinear antisymmetric bracket. This is all the
/// symmetric term recursion needs.
pub trait AdModule: LinearSpace {
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// A unital associative algebra.
pub trait AssocAlgebra: LinearSpace {
    fn one(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// Views an associative algebra as an [`AdModule`] with `[a,b] = ab - ba`.
#[derive(Clone, Copy, Debug)]
pub struct Commutator<'a, A>(pub &'a A);

impl<A: LinearSpace> LinearSpace for Commutator<'_, A> {
    type Elem = A::Elem;

    fn zero(&self) -> A::Elem {
        self.0.zero()
    }
    fn add(&self, a: &A::Elem, b: &A::Elem) -> A::Elem {
        self.0.add(a, b)
    }
    fn scale(&self, a: &A::Elem, c: &Rational) -> A::Elem {
        self.0.scale(a, c)
    }
    fn is_zero(&self, a: &A::Elem) -> bool {
        self.0.is_zero(a)
    }
    fn sub(&self, a: &A::Elem, b: &A::Elem) -> A::Elem {
        self.0.sub(a, b)
    }
    fn add_scaled(&self, acc: &mut A::Elem, c: &Rational, b: &A::Elem) {
        self.0.add_scaled(acc, c, b)
    }
}

impl<A: AssocAlgebra> AdModule for Commutator<'_, A> {
    fn bracket(&self, a: &A::Elem, b: &A::Elem) -> A::Elem {
        self.0.sub(&self.0.mul(a, b), &self.0.mul(b, a))
    }
}

/// The rationals as a (commutative) one-dimensional algebra.
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalField;

impl LinearSpace for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn scale(&self, a: &Rational, c: &Rational) -> Rational {
        a * c
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
}

impl AssocAlgebra for RationalField {
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
}

/// `ad_a^j b = [a, [a, ... [a, b]]]`
pub fn ad_pow<M: AdModule>(m: &M, a: &M::Elem, j: usize, b: &M::Elem) -> M::Elem {
    let mut cur = b.clone();
    for _ in 0..j {
        cur = m.bracket(a, &cur);
    }
    cur
}
