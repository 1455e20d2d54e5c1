//! Exponents read off truncated λ-series by repeatedly multiplying away the
//! factors already found.

use std::collections::BTreeMap;

use super::EngineError;
use crate::exact_arith::Rational;
use crate::lie_symbolic::{series_product, AssocAlgebra, TruncSeries};

fn check_order(n: usize) -> Result<(), EngineError> {
    if n < 2 {
        Err(EngineError::DegreeTooSmall { min: 2, got: n })
    } else {
        Ok(())
    }
}

fn exp_of<A: AssocAlgebra>(a: &A, c: &A::Elem, scale: Rational, n: usize) -> TruncSeries<A::Elem> {
    TruncSeries::exp_factor(a, &a.scale(c, &scale), 1, n)
}

fn neg_exp<A: AssocAlgebra>(a: &A, c: &A::Elem, k: usize, n: usize) -> TruncSeries<A::Elem> {
    TruncSeries::exp_factor(a, &a.neg(c), k, n)
}

/// Symmetric exponents `C_2..=C_n` (even ones included, expected to vanish)
/// from `S = e^{−λY/2} e^{−λX/2} e^{λ(X+Y)} e^{−λX/2} e^{−λY/2}`:
/// `C_k = ½[λ^k]S`, then `S ← e^{−λ^k C_k} S e^{−λ^k C_k}`.
pub fn sym_oracle<A: AssocAlgebra>(
    a: &A,
    x: &A::Elem,
    y: &A::Elem,
    n: usize,
) -> Result<BTreeMap<usize, A::Elem>, EngineError> {
    check_order(n)?;
    let mh = Rational::new(-1, 2).unwrap();
    let ex = exp_of(a, x, mh.clone(), n);
    let ey = exp_of(a, y, mh, n);
    let esum = exp_of(a, &a.add(x, y), Rational::one(), n);
    let mut s = series_product(a, &[ey.clone(), ex.clone(), esum, ex, ey], n)?;
    let half = Rational::new(1, 2).unwrap();
    let mut out = BTreeMap::new();
    for k in 2..=n {
        let c = a.scale(s.coeff(k), &half);
        if k < n && !a.is_zero(&c) {
            let e = neg_exp(a, &c, k, n);
            s = e.mul(a, &s)?.mul(a, &e)?;
        }
        out.insert(k, c);
    }
    Ok(out)
}

/// Standard exponents: `e^{X+Y} = e^X e^Y e^{C_2} e^{C_3} ⋯`.
pub fn std_terms<A: AssocAlgebra>(
    a: &A,
    x: &A::Elem,
    y: &A::Elem,
    n: usize,
) -> Result<BTreeMap<usize, A::Elem>, EngineError> {
    check_order(n)?;
    let m1 = Rational::from_int(-1);
    let ex = exp_of(a, x, m1.clone(), n);
    let ey = exp_of(a, y, m1, n);
    let esum = exp_of(a, &a.add(x, y), Rational::one(), n);
    let mut s = series_product(a, &[ey, ex, esum], n)?;
    let mut out = BTreeMap::new();
    for k in 2..=n {
        let c = s.coeff(k).clone();
        if k < n && !a.is_zero(&c) {
            s = neg_exp(a, &c, k, n).mul(a, &s)?;
        }
        out.insert(k, c);
    }
    Ok(out)
}

/// Left-oriented exponents: `e^{X+Y} = ⋯ e^{Ĉ_3} e^{Ĉ_2} e^Y e^X`.
pub fn std_terms_left<A: AssocAlgebra>(
    a: &A,
    x: &A::Elem,
    y: &A::Elem,
    n: usize,
) -> Result<BTreeMap<usize, A::Elem>, EngineError> {
    check_order(n)?;
    let m1 = Rational::from_int(-1);
    let ex = exp_of(a, x, m1.clone(), n);
    let ey = exp_of(a, y, m1, n);
    let esum = exp_of(a, &a.add(x, y), Rational::one(), n);
    let mut s = series_product(a, &[esum, ex, ey], n)?;
    let mut out = BTreeMap::new();
    for k in 2..=n {
        let c = s.coeff(k).clone();
        if k < n && !a.is_zero(&c) {
            s = s.mul(a, &neg_exp(a, &c, k, n))?;
        }
        out.insert(k, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_symbolic::{expand_assoc, AssocPoly, FreeAssoc, Generator, LieCombo};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn xy(n: usize) -> (FreeAssoc, AssocPoly, AssocPoly) {
        let a = FreeAssoc::new(n);
        let x = a.generator(Generator::X);
        let y = a.generator(Generator::Y);
        (a, x, y)
    }

    #[test]
    fn oracle_low_degrees() {
        let (a, x, y) = xy(5);
        let c = sym_oracle(&a, &x, &y, 5).unwrap();
        assert!(c[&2].is_zero());
        assert!(c[&4].is_zero());
        let (lx, ly) = (LieCombo::x(), LieCombo::y());
        let lxy = lx.bracket(&ly);
        let c3 = lx
            .bracket(&lxy)
            .scaled(&q(1, 48))
            .plus(&ly.bracket(&lxy).scaled(&q(1, 24)));
        assert_eq!(c[&3], expand_assoc(&c3));
    }

    #[test]
    fn standard_second_term() {
        let (a, x, y) = xy(3);
        let c = std_terms(&a, &x, &y, 3).unwrap();
        assert_eq!(
            c[&2],
            AssocPoly::parse("-1/2 XY + 1/2 YX", usize::MAX).unwrap()
        );
        let l = std_terms_left(&a, &x, &y, 3).unwrap();
        assert_eq!(l[&2], c[&2].scaled(&q(-1, 1)));
        assert_eq!(l[&3], c[&3]);
    }

    #[test]
    fn rejects_order_below_two() {
        let (a, x, y) = xy(1);
        assert!(sym_oracle(&a, &x, &y, 1).is_err());
    }
}
