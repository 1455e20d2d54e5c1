use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::algebra::{AdModule, LinearSpace};
use super::tree::{CommTree, Generator};
use crate::exact_arith::Rational;

/// Homogeneous rational combination of commutator trees.
///
/// Collection is syntactic: only structurally identical trees combine, and
/// entries whose coefficient cancels to zero are removed.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LieCombo {
    terms: BTreeMap<CommTree, Rational>,
}

impl LieCombo {
    pub fn zero() -> Self {
        LieCombo::default()
    }

    pub fn generator(g: Generator) -> Self {
        Self::from_tree(CommTree::leaf(g), Rational::one())
    }

    pub fn x() -> Self {
        Self::generator(Generator::X)
    }

    pub fn y() -> Self {
        Self::generator(Generator::Y)
    }

    pub fn from_tree(t: CommTree, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(t, c);
        }
        LieCombo { terms }
    }

    /// Degree shared by all stored trees; `None` for the empty combination.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(CommTree::degree)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CommTree, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &CommTree) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    fn accumulate(&mut self, t: CommTree, c: Rational) {
        if c.is_zero() {
            return;
        }
        if let Some(d) = self.degree() {
            assert_eq!(
                d,
                t.degree(),
                "inhomogeneous LieCombo: adding degree {} to degree {}",
                t.degree(),
                d
            );
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(t) {
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

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LieCombo {
            terms: self.terms.iter().map(|(t, a)| (t.clone(), a * c)).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled_from(&Rational::one(), other);
        out
    }

    pub fn add_scaled_from(&mut self, c: &Rational, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (t, a) in &other.terms {
            self.accumulate(t.clone(), a * c);
        }
    }

    /// Bilinear bracket; `[T,T]` collapses to zero for identical trees.
    pub fn bracket(&self, other: &Self) -> Self {
        let mut out = LieCombo::zero();
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                if s == t {
                    continue;
                }
                out.accumulate(CommTree::bracket(s.clone(), t.clone()), a * b);
            }
        }
        out
    }

    pub fn map_leaves(&self, f: impl Fn(Generator) -> Generator) -> Self {
        let mut out = LieCombo::zero();
        for (t, a) in &self.terms {
            out.accumulate(t.map_leaves(&f), a.clone());
        }
        out
    }

    /// `[{"coeff": "p/q", "tree": ...}, ...]`
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(t, c)| json!({"coeff": c.to_string(), "tree": t.to_json()}))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let mut out = LieCombo::zero();
        for item in v.as_array()? {
            let c: Rational = item.get("coeff")?.as_str()?.parse().ok()?;
            let t = CommTree::from_json(item.get("tree")?)?;
            out.accumulate(t, c);
        }
        Some(out)
    }
}

impl fmt::Display for LieCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LieCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The free Lie algebra on the generator alphabet, with syntactic collection.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeLie;

impl LinearSpace for FreeLie {
    type Elem = LieCombo;

    fn zero(&self) -> LieCombo {
        LieCombo::zero()
    }
    fn add(&self, a: &LieCombo, b: &LieCombo) -> LieCombo {
        a.plus(b)
    }
    fn scale(&self, a: &LieCombo, c: &Rational) -> LieCombo {
        a.scaled(c)
    }
    fn is_zero(&self, a: &LieCombo) -> bool {
        a.is_empty()
    }
    fn add_scaled(&self, acc: &mut LieCombo, c: &Rational, b: &LieCombo) {
        acc.add_scaled_from(c, b)
    }
}

impl AdModule for FreeLie {
    fn bracket(&self, a: &LieCombo, b: &LieCombo) -> LieCombo {
        a.bracket(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_symbolic::algebra::ad_pow;

    fn tree(s: &str) -> CommTree {
        CommTree::from_json(&serde_json::from_str(s).unwrap()).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let xy = LieCombo::x().bracket(&LieCombo::y());
        assert_eq!(xy.len(), 1);
        assert_eq!(xy.coeff(&tree(r#"["X","Y"]"#)), Rational::one());
        assert!(LieCombo::x().bracket(&LieCombo::x()).is_empty());

        let half = Rational::new(1, 2).unwrap();
        let r = xy.scaled(&half).bracket(&LieCombo::y());
        assert_eq!(r.coeff(&tree(r#"[["X","Y"],"Y"]"#)), half);
        assert_eq!(r.degree(), Some(3));
    }

    #[test]
    fn ad_pow_examples() {
        let m = FreeLie;
        let (x, y) = (LieCombo::x(), LieCombo::y());
        assert_eq!(ad_pow(&m, &x, 0, &y), y);
        assert_eq!(ad_pow(&m, &y, 1, &x).to_string(), "(1) [Y,X]");
        assert_eq!(ad_pow(&m, &y, 2, &x).to_string(), "(1) [Y,[Y,X]]");
    }

    #[test]
    fn cancellation_drops_entries() {
        let xy = LieCombo::x().bracket(&LieCombo::y());
        let mut z = xy.clone();
        z.add_scaled_from(&Rational::from_int(-1), &xy);
        assert!(z.is_empty());
        assert_eq!(z.degree(), None);
    }

    #[test]
    #[should_panic(expected = "inhomogeneous")]
    fn mixing_degrees_panics() {
        let xy = LieCombo::x().bracket(&LieCombo::y());
        let _ = xy.plus(&LieCombo::x());
    }

    #[test]
    fn json_round_trip() {
        let c = LieCombo::x()
            .bracket(&LieCombo::x().bracket(&LieCombo::y()))
            .scaled(&Rational::new(1, 48).unwrap());
        let v = c.to_json();
        assert_eq!(
            v.to_string(),
            r#"[{"coeff":"1/48","tree":["X",["X","Y"]]}]"#
        );
        assert_eq!(LieCombo::from_json(&v), Some(c));
    }
}
