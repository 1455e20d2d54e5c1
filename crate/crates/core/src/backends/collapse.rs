use std::collections::BTreeMap;

use super::structconst::{ScAlgebra, ScElement};
use crate::engine::SymTermTable;
use crate::exact_arith::{Rational, UniPoly};

/// Middle exponents that all point along one basis vector `v`:
/// `C_k = m_k v`, so `Π e^{C_k} · Π reversed = e^{(Σ 2 m_k) v}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapsedMiddle {
    pub direction: usize,
    pub label: String,
    /// `m_k` by degree `k`.
    pub coefficients: BTreeMap<usize, UniPoly>,
    /// `Σ_k 2 m_k`.
    pub doubled_sum: UniPoly,
}

/// `None` unless every nonzero `C_k` is supported on the same single basis
/// index (and at least one is nonzero).
pub fn collapse_middle(l: &ScAlgebra, terms: &SymTermTable<ScElement>) -> Option<CollapsedMiddle> {
    let mut direction: Option<usize> = None;
    for (_, c) in terms.iter() {
        match c.support().as_slice() {
            [] => {}
            [i] => match direction {
                None => direction = Some(*i),
                Some(d) if d == *i => {}
                Some(_) => return None,
            },
            _ => return None,
        }
    }
    let direction = direction?;
    let two = Rational::from_int(2);
    let coefficients: BTreeMap<usize, UniPoly> = terms
        .iter()
        .map(|(k, c)| (k, c.coeff(direction).clone()))
        .collect();
    let doubled_sum = coefficients
        .values()
        .fold(UniPoly::zero(), |acc, m| &acc + &m.scale(&two));
    Some(CollapsedMiddle {
        direction,
        label: l.labels()[direction].clone(),
        coefficients,
        doubled_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::structconst::{example1_algebra, example2_algebra};
    use crate::engine::sym_terms;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn example1_collapses_along_y() {
        let l = example1_algebra();
        let t = sym_terms(&l, &l.element("X"), &l.element("Y"), 7).unwrap();
        let c = collapse_middle(&l, &t).unwrap();
        assert_eq!(c.label, "Y");
        assert_eq!(c.coefficients[&3], UniPoly::monomial(q(1, 48), 1));
        assert_eq!(c.coefficients[&5], UniPoly::monomial(q(1, 3840), 2));
        assert_eq!(c.coefficients[&7], UniPoly::monomial(q(1, 645120), 3));
    }

    #[test]
    fn example2_collapses_along_x() {
        let l = example2_algebra();
        let t = sym_terms(&l, &l.element("X"), &l.element("W"), 3).unwrap();
        let c = collapse_middle(&l, &t).unwrap();
        assert_eq!(c.label, "X");
        // C3 = (1/24)[W,[X,W]] = -s²/24 X, worked by hand
        assert_eq!(c.coefficients[&3], UniPoly::monomial(q(-1, 24), 2));
    }

    #[test]
    fn sum_of_generators_has_no_middle() {
        // X + Y in the second algebra: all exponents vanish
        let l = example2_algebra();
        let t = sym_terms(&l, &l.element("X"), &l.element("Y"), 9).unwrap();
        assert!(t.iter().all(|(_, c)| c.is_zero()));
        assert_eq!(collapse_middle(&l, &t), None);
    }

    #[test]
    fn non_collinear_terms_do_not_collapse() {
        // free nilpotent Lie algebra of class 3 on X, Y: C3 spans two
        // independent directions [X,[X,Y]] and [Y,[X,Y]]
        let text = "basis X Y Z A B\n[X,Y] = Z\n[X,Z] = A\n[Y,Z] = B\n";
        let l = ScAlgebra::parse(text, "mem").unwrap();
        assert_eq!(crate::backends::sc_validate(&l), Ok(()));
        let t = sym_terms(&l, &l.element("X"), &l.element("Y"), 5).unwrap();
        assert_eq!(t.get(3).unwrap().support().len(), 2);
        assert_eq!(collapse_middle(&l, &t), None);
    }
}
