use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::algebra::{AssocAlgebra, LinearSpace};
use super::combo::LieCombo;
use super::tree::{CommTree, Generator};
use crate::exact_arith::Rational;

/// A word in the free monoid; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AssocWord(Vec<Generator>);

impl AssocWord {
    pub fn empty() -> Self {
        AssocWord(Vec::new())
    }

    pub fn new(letters: Vec<Generator>) -> Self {
        AssocWord(letters)
    }

    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(Generator::from_label)
            .collect::<Option<Vec<_>>>()
            .map(AssocWord)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    fn concat(&self, other: &AssocWord) -> AssocWord {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        AssocWord(v)
    }
}

impl fmt::Display for AssocWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for g in &self.0 {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AssocWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Polynomial in non-commuting generators, truncated above `max_degree`.
///
/// Equality compares the stored terms only.
#[derive(Clone)]
pub struct AssocPoly {
    terms: BTreeMap<AssocWord, Rational>,
    max_degree: usize,
}

impl PartialEq for AssocPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for AssocPoly {}

impl AssocPoly {
    pub fn zero(max_degree: usize) -> Self {
        AssocPoly {
            terms: BTreeMap::new(),
            max_degree,
        }
    }

    pub fn one(max_degree: usize) -> Self {
        Self::monomial(AssocWord::empty(), Rational::one(), max_degree)
    }

    pub fn generator(g: Generator, max_degree: usize) -> Self {
        Self::monomial(AssocWord::new(vec![g]), Rational::one(), max_degree)
    }

    pub fn monomial(w: AssocWord, c: Rational, max_degree: usize) -> Self {
        let mut p = Self::zero(max_degree);
        p.accumulate(w, c);
        p
    }

    /// Parses sums like `"XXY - 2 XYX + 1/3 YXX"`. Intended for tests and
    /// command-line input.
    pub fn parse(s: &str, max_degree: usize) -> Option<Self> {
        let mut p = Self::zero(max_degree);
        let normalized = s.replace('-', "+ -");
        for chunk in normalized.split('+') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let mut parts: Vec<&str> = chunk.split_whitespace().collect();
            let word = parts.pop()?;
            let mut coeff = Rational::one();
            for part in parts {
                if part == "-" {
                    coeff = -coeff;
                } else if let Some(rest) = part.strip_prefix('-') {
                    coeff = -coeff * rest.parse::<Rational>().ok()?;
                } else {
                    coeff = coeff * part.parse::<Rational>().ok()?;
                }
            }
            let word = if word == "1" {
                AssocWord::empty()
            } else {
                AssocWord::parse(word)?
            };
            p.accumulate(word, coeff);
        }
        Some(p)
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AssocWord, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &AssocWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    fn accumulate(&mut self, w: AssocWord, c: Rational) {
        if c.is_zero() || w.len() > self.max_degree {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled_from(&mut self, c: &Rational, other: &AssocPoly) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.accumulate(w.clone(), a * c);
        }
    }

    pub fn plus(&self, other: &AssocPoly) -> AssocPoly {
        let mut out = self.clone();
        out.add_scaled_from(&Rational::one(), other);
        out
    }

    pub fn minus(&self, other: &AssocPoly) -> AssocPoly {
        let mut out = self.clone();
        out.add_scaled_from(&Rational::from_int(-1), other);
        out
    }

    pub fn scaled(&self, c: &Rational) -> AssocPoly {
        let mut out = Self::zero(self.max_degree);
        out.add_scaled_from(c, self);
        out
    }

    /// Concatenation product, truncated at the smaller of the two bounds.
    pub fn times(&self, other: &AssocPoly) -> AssocPoly {
        let mut out = Self::zero(self.max_degree.min(other.max_degree));
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.len() + v.len() <= out.max_degree {
                    out.accumulate(u.concat(v), a * b);
                }
            }
        }
        out
    }

    pub fn map_letters(&self, f: impl Fn(Generator) -> Generator) -> AssocPoly {
        let mut out = Self::zero(self.max_degree);
        for (w, c) in &self.terms {
            out.accumulate(AssocWord(w.0.iter().map(|&g| f(g)).collect()), c.clone());
        }
        out
    }

    /// Homogeneous component of the given degree.
    pub fn component(&self, degree: usize) -> AssocPoly {
        AssocPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == degree)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
            max_degree: self.max_degree,
        }
    }
}

impl fmt::Display for AssocPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} {w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AssocPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Rewrites every commutator as `ab - ba`. Two combinations denote the same
/// Lie element exactly when their expansions are equal.
pub fn expand_assoc(a: &LieCombo) -> AssocPoly {
    let mut cache: HashMap<CommTree, AssocPoly> = HashMap::new();
    let mut out = AssocPoly::zero(usize::MAX);
    for (t, c) in a.iter() {
        let e = expand_tree(t, &mut cache);
        out.add_scaled_from(c, &e);
    }
    out
}

fn expand_tree(t: &CommTree, cache: &mut HashMap<CommTree, AssocPoly>) -> AssocPoly {
    if let Some(p) = cache.get(t) {
        return p.clone();
    }
    let p = match t.children() {
        None => {
            let CommTree::Leaf(g) = t else { unreachable!() };
            AssocPoly::generator(*g, usize::MAX)
        }
        Some((l, r)) => {
            let el = expand_tree(l, cache);
            let er = expand_tree(r, cache);
            el.times(&er).minus(&er.times(&el))
        }
    };
    cache.insert(t.clone(), p.clone());
    p
}

/// Free associative algebra truncated at a fixed degree.
#[derive(Clone, Copy, Debug)]
pub struct FreeAssoc {
    pub max_degree: usize,
}

impl FreeAssoc {
    pub fn new(max_degree: usize) -> Self {
        FreeAssoc { max_degree }
    }

    pub fn generator(&self, g: Generator) -> AssocPoly {
        AssocPoly::generator(g, self.max_degree)
    }
}

impl LinearSpace for FreeAssoc {
    type Elem = AssocPoly;

    fn zero(&self) -> AssocPoly {
        AssocPoly::zero(self.max_degree)
    }
    fn add(&self, a: &AssocPoly, b: &AssocPoly) -> AssocPoly {
        a.plus(b)
    }
    fn scale(&self, a: &AssocPoly, c: &Rational) -> AssocPoly {
        a.scaled(c)
    }
    fn is_zero(&self, a: &AssocPoly) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &AssocPoly, b: &AssocPoly) -> AssocPoly {
        a.minus(b)
    }
    fn add_scaled(&self, acc: &mut AssocPoly, c: &Rational, b: &AssocPoly) {
        acc.add_scaled_from(c, b)
    }
}

impl AssocAlgebra for FreeAssoc {
    fn one(&self) -> AssocPoly {
        AssocPoly::one(self.max_degree)
    }
    fn mul(&self, a: &AssocPoly, b: &AssocPoly) -> AssocPoly {
        let mut p = a.times(b);
        p.max_degree = self.max_degree;
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> AssocPoly {
        AssocPoly::parse(s, usize::MAX).unwrap()
    }

    #[test]
    fn expand_examples() {
        let (x, y) = (LieCombo::x(), LieCombo::y());
        let xy = x.bracket(&y);
        assert_eq!(expand_assoc(&xy), poly("XY - YX"));
        // [X,[X,Y]] = X(XY-YX) - (XY-YX)X, collected by hand
        assert_eq!(expand_assoc(&x.bracket(&xy)), poly("XXY - 2 XYX + YXX"));
    }

    #[test]
    fn parse_and_display() {
        let p = poly("1/2 XY - 1/3 YX + 1");
        assert_eq!(p.to_string(), "1 1 + 1/2 XY + -1/3 YX");
        assert_eq!(
            p.coeff(&AssocWord::parse("YX").unwrap()),
            Rational::new(-1, 3).unwrap()
        );
    }

    #[test]
    fn truncated_product_drops_long_words() {
        let a = FreeAssoc::new(2);
        let x = a.generator(Generator::X);
        let xx = a.mul(&x, &x);
        assert_eq!(xx.len(), 1);
        assert!(a.mul(&xx, &x).is_zero());
    }
}
