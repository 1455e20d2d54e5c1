use std::collections::BTreeMap;

use super::seeds::seed_tables;
use super::EngineError;
use crate::exact_arith::Rational;
use crate::lie_symbolic::AdModule;

/// Where the `∓k C_k` correction of the `(k−1)` entry enters the update.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CorrectionPlacement {
    /// Corrected entry used as a source for every `j` in the sum.
    #[default]
    InsideSum,
    /// Sum over uncorrected entries; the `(k−1)` entry is then overwritten by
    /// the corrected previous value.
    AfterSum,
}

/// Odd-degree exponents `C_3, C_5, …` together with the final `f`/`g`
/// recursion tables.
#[derive(Clone, Debug)]
pub struct SymTermTable<E> {
    max_degree: usize,
    terms: BTreeMap<usize, E>,
    f: Vec<E>,
    g: Vec<E>,
    level: usize,
}

impl<E> SymTermTable<E> {
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// `C_k`; `None` for even `k` or `k` outside `3..=max_degree`.
    pub fn get(&self, k: usize) -> Option<&E> {
        self.terms.get(&k)
    }

    /// `(k, C_k)` in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &E)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.terms.keys().copied().collect()
    }

    /// The index `k` of the stored `f_{k,ℓ}`, `g_{k,ℓ}` tables.
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn f_table(&self) -> &[E] {
        &self.f
    }

    pub fn g_table(&self) -> &[E] {
        &self.g
    }

    pub fn into_terms(self) -> BTreeMap<usize, E> {
        self.terms
    }
}

/// Exponents of `e^{X+Y} = e^{X/2} e^{Y/2} e^{C3} e^{C5} ⋯ e^{C5} e^{C3} e^{Y/2} e^{X/2}`
/// up to degree `n`.
pub fn sym_terms<M: AdModule>(
    m: &M,
    x: &M::Elem,
    y: &M::Elem,
    n: usize,
) -> Result<SymTermTable<M::Elem>, EngineError> {
    sym_terms_with(m, x, y, n, CorrectionPlacement::InsideSum)
}

/// [`sym_terms`] with `X` and `Y` exchanged: the exponents of
/// `e^{Y/2} e^{X/2} ⋯ e^{X/2} e^{Y/2}`.
pub fn sym_terms_swapped<M: AdModule>(
    m: &M,
    x: &M::Elem,
    y: &M::Elem,
    n: usize,
) -> Result<SymTermTable<M::Elem>, EngineError> {
    sym_terms(m, y, x, n)
}

pub fn sym_terms_with<M: AdModule>(
    m: &M,
    x: &M::Elem,
    y: &M::Elem,
    n: usize,
    placement: CorrectionPlacement,
) -> Result<SymTermTable<M::Elem>, EngineError> {
    if n < 3 {
        return Err(EngineError::DegreeTooSmall { min: 3, got: n });
    }
    let lmax = n - 1;
    let (mut f, mut g) = seed_tables(m, x, y, lmax);
    let mut terms = BTreeMap::new();
    terms.insert(
        3,
        m.scale(&m.sub(&f[2], &g[2]), &Rational::new(1, 6).unwrap()),
    );

    let mut level = 1;
    let mut k = 3;
    while k + 2 <= n {
        let c = &terms[&k];
        f = advance(m, &f, c, k, -1, placement);
        g = advance(m, &g, c, k, 1, placement);
        level = k;
        let next = m.scale(
            &m.sub(&f[k + 1], &g[k + 1]),
            &Rational::inv_int(2 * (k as u64 + 2)),
        );
        terms.insert(k + 2, next);
        k += 2;
    }

    Ok(SymTermTable {
        max_degree: n,
        terms,
        f,
        g,
        level,
    })
}

/// One level of the table update:
/// `t_{k,ℓ} = Σ_j (sign^j / j!) ad_{C}^j t̃_{k−2,ℓ−kj}` where `t̃` differs from
/// `t` only at `ℓ = k−1`, shifted by `sign·k·C`.
fn advance<M: AdModule>(
    m: &M,
    prev: &[M::Elem],
    c: &M::Elem,
    k: usize,
    sign: i64,
    placement: CorrectionPlacement,
) -> Vec<M::Elem> {
    let lmax = prev.len() - 1;
    let corrected = |src: &M::Elem| {
        let mut t = src.clone();
        m.add_scaled(&mut t, &Rational::from_int(sign * k as i64), c);
        t
    };

    let mut out: Vec<M::Elem> = (0..=lmax).map(|_| m.zero()).collect();
    for (src_l, src) in prev.iter().enumerate() {
        let src = if src_l == k - 1 && placement == CorrectionPlacement::InsideSum {
            corrected(src)
        } else {
            src.clone()
        };
        let mut cur = src;
        let mut j = 0usize;
        while src_l + k * j <= lmax {
            if j > 0 {
                cur = m.bracket(c, &cur);
                if m.is_zero(&cur) {
                    break;
                }
            }
            let mut coef = Rational::inv_factorial(j as u32);
            if sign < 0 && j % 2 == 1 {
                coef = -coef;
            }
            m.add_scaled(&mut out[src_l + k * j], &coef, &cur);
            j += 1;
        }
    }
    if placement == CorrectionPlacement::AfterSum && k - 1 <= lmax {
        out[k - 1] = corrected(&prev[k - 1]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_symbolic::{expand_assoc, swap_xy, FreeLie, LieCombo};

    #[test]
    fn rejects_small_degree() {
        let r = sym_terms(&FreeLie, &LieCombo::x(), &LieCombo::y(), 2);
        assert!(matches!(
            r,
            Err(EngineError::DegreeTooSmall { min: 3, got: 2 })
        ));
    }

    #[test]
    fn only_odd_degrees_present() {
        let t = sym_terms(&FreeLie, &LieCombo::x(), &LieCombo::y(), 8).unwrap();
        assert_eq!(t.degrees(), vec![3, 5, 7]);
        assert_eq!(t.level(), 5);
        assert!(t.get(4).is_none());
        for (k, c) in t.iter() {
            assert_eq!(c.degree(), Some(k));
        }
    }

    #[test]
    fn placements_agree_after_expansion() {
        let (x, y) = (LieCombo::x(), LieCombo::y());
        let a = sym_terms_with(&FreeLie, &x, &y, 9, CorrectionPlacement::InsideSum).unwrap();
        let b = sym_terms_with(&FreeLie, &x, &y, 9, CorrectionPlacement::AfterSum).unwrap();
        for k in [3, 5, 7, 9] {
            assert_eq!(
                expand_assoc(a.get(k).unwrap()),
                expand_assoc(b.get(k).unwrap()),
                "k={k}"
            );
        }
    }

    #[test]
    fn swapped_terms_mirror_letters() {
        let (x, y) = (LieCombo::x(), LieCombo::y());
        let a = sym_terms(&FreeLie, &x, &y, 7).unwrap();
        let b = sym_terms_swapped(&FreeLie, &x, &y, 7).unwrap();
        for k in [3, 5, 7] {
            let lhs = expand_assoc(b.get(k).unwrap());
            let rhs = expand_assoc(a.get(k).unwrap()).map_letters(swap_xy);
            assert_eq!(lhs, rhs, "k={k}");
        }
        assert_eq!(b.get(3).unwrap(), &a.get(3).unwrap().map_leaves(swap_xy));
    }
}
