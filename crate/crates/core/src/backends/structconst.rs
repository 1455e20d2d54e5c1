use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::exact_arith::{upoly_mul, Rational, UniPoly};
use crate::lie_symbolic::{AdModule, LinearSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScError {
    #[error("element has {got} coefficients, algebra dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{origin}:{line}: {msg}")]
    Parse {
        origin: String,
        line: usize,
        msg: String,
    },
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}

/// First failed law found by [`sc_validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScViolation {
    #[error("antisymmetry fails: [{i},{j}] != -[{j},{i}]")]
    Antisymmetry { i: String, j: String },
    #[error("Jacobi identity fails for ({i}, {j}, {k})")]
    Jacobi { i: String, j: String, k: String },
}

/// Element of a structure-constant algebra: one polynomial coefficient per
/// basis vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScElement {
    coeffs: Vec<UniPoly>,
}

impl ScElement {
    pub fn new(coeffs: Vec<UniPoly>) -> Self {
        ScElement { coeffs }
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &UniPoly {
        &self.coeffs[i]
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(UniPoly::is_zero)
    }

    /// Indices with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect()
    }

    /// Multiplies every coefficient by the polynomial `p`.
    pub fn times_poly(&self, p: &UniPoly) -> Self {
        ScElement {
            coeffs: self.coeffs.iter().map(|c| upoly_mul(c, p)).collect(),
        }
    }

    /// Numeric coordinates at the parameter value `t`.
    pub fn eval(&self, t: &Rational) -> Vec<Rational> {
        self.coeffs.iter().map(|c| c.eval(t)).collect()
    }

    fn zip(&self, other: &Self, f: impl Fn(&UniPoly, &UniPoly) -> UniPoly) -> Self {
        assert_eq!(self.dim(), other.dim(), "ScElement dimension mismatch");
        ScElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for ScElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

/// Finite-dimensional Lie algebra `[e_i, e_j] = Σ_k c[i][j][k] e_k` with
/// polynomial structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScAlgebra {
    labels: Vec<String>,
    table: Vec<Vec<Vec<UniPoly>>>,
}

impl ScAlgebra {
    /// Builds the tensor from explicitly given brackets. `[j,i]` is filled
    /// in as `−[i,j]` unless it is given as well.
    pub fn new(
        labels: Vec<String>,
        brackets: Vec<(usize, usize, Vec<UniPoly>)>,
    ) -> Result<Self, ScError> {
        let d = labels.len();
        let mut table = vec![vec![vec![UniPoly::zero(); d]; d]; d];
        let mut given = vec![vec![false; d]; d];
        for (i, j, rhs) in &brackets {
            if rhs.len() != d {
                return Err(ScError::DimensionMismatch {
                    expected: d,
                    got: rhs.len(),
                });
            }
            table[*i][*j] = rhs.clone();
            given[*i][*j] = true;
        }
        for (i, j, rhs) in &brackets {
            if !given[*j][*i] {
                table[*j][*i] = rhs.iter().map(|c| -c).collect();
            }
        }
        Ok(ScAlgebra { labels, table })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn structure(&self, i: usize, j: usize) -> &[UniPoly] {
        &self.table[i][j]
    }

    pub fn basis(&self, i: usize) -> ScElement {
        let mut coeffs = vec![UniPoly::zero(); self.dim()];
        coeffs[i] = UniPoly::one();
        ScElement { coeffs }
    }

    /// Basis element by label; panics if the label is unknown.
    pub fn element(&self, label: &str) -> ScElement {
        let i = self
            .index_of(label)
            .unwrap_or_else(|| panic!("unknown basis label {label:?}"));
        self.basis(i)
    }

    fn bracket_unchecked(&self, u: &ScElement, v: &ScElement) -> ScElement {
        let d = self.dim();
        let mut out = vec![UniPoly::zero(); d];
        for i in 0..d {
            if u.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if v.coeffs[j].is_zero() {
                    continue;
                }
                let uv = upoly_mul(&u.coeffs[i], &v.coeffs[j]);
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &upoly_mul(&uv, c);
                    }
                }
            }
        }
        ScElement { coeffs: out }
    }

    /// Serializes in the format read by [`ScAlgebra::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "dimension {}\nbasis {}\n",
            self.dim(),
            self.labels.join(" ")
        );
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let rhs: Vec<String> = self.table[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .flat_map(|(k, c)| {
                        let label = self.labels[k].clone();
                        c.coeffs()
                            .iter()
                            .enumerate()
                            .filter(|(_, q)| !q.is_zero())
                            .map(move |(p, q)| match p {
                                0 => format!("{q} * {label}"),
                                1 => format!("{q} t * {label}"),
                                _ => format!("{q} t^{p} * {label}"),
                            })
                    })
                    .collect();
                if !rhs.is_empty() {
                    s.push_str(&format!(
                        "[{},{}] = {}\n",
                        self.labels[i],
                        self.labels[j],
                        rhs.join(" + ")
                    ));
                }
            }
        }
        s
    }

    /// Reads the text format
    ///
    /// ```text
    /// # comment
    /// dimension 3
    /// basis X Y Z
    /// [X,Y] = 1 * Z
    /// [X,Z] = 1 t * Y + -1/2 t^2 * Z
    /// ```
    ///
    /// Coefficients are `p/q`, `p/q t` or `p/q t^m`; a summand without `*`
    /// is a bare basis label with coefficient 1, and `0` is the empty sum.
    pub fn parse(text: &str, origin: &str) -> Result<Self, ScError> {
        let err = |line: usize, msg: String| ScError::Parse {
            origin: origin.to_string(),
            line,
            msg,
        };
        let mut dimension: Option<usize> = None;
        let mut labels: Option<Vec<String>> = None;
        let mut brackets = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("dimension") {
                let d = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| err(line_no, format!("bad dimension {:?}", rest.trim())))?;
                dimension = Some(d);
            } else if let Some(rest) = line.strip_prefix("basis") {
                let ls: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                for (a, l) in ls.iter().enumerate() {
                    if ls[..a].contains(l) {
                        return Err(err(line_no, format!("duplicate basis label {l:?}")));
                    }
                }
                labels = Some(ls);
            } else if line.starts_with('[') {
                let ls = labels
                    .as_ref()
                    .ok_or_else(|| err(line_no, "bracket before basis line".into()))?;
                brackets.push(parse_bracket(line, ls).map_err(|m| err(line_no, m))?);
            } else {
                return Err(err(line_no, format!("unrecognized line {line:?}")));
            }
        }
        let labels = labels.ok_or_else(|| err(0, "missing basis line".into()))?;
        if let Some(d) = dimension {
            if d != labels.len() {
                return Err(err(
                    0,
                    format!("dimension {d} but {} basis labels", labels.len()),
                ));
            }
        }
        ScAlgebra::new(labels, brackets)
    }

    pub fn load(path: &Path) -> Result<Self, ScError> {
        let text = std::fs::read_to_string(path).map_err(|e| ScError::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        Self::parse(&text, &path.display().to_string())
    }
}

fn resolve(label: &str, labels: &[String]) -> Result<usize, String> {
    let label = label.trim();
    if let Some(i) = labels.iter().position(|l| l == label) {
        return Ok(i);
    }
    match label.parse::<usize>() {
        Ok(i) if i < labels.len() => Ok(i),
        _ => Err(format!("unknown basis element {label:?}")),
    }
}

fn parse_coeff(tok: &str) -> Result<UniPoly, String> {
    let parts: Vec<&str> = tok.split_whitespace().collect();
    let (num, power) = match parts.as_slice() {
        [c] if c.starts_with('t') || c.starts_with("-t") => {
            let neg = c.starts_with('-');
            let p = parse_power(c.trim_start_matches('-'))?;
            (Rational::from_int(if neg { -1 } else { 1 }), p)
        }
        [c] => (c.parse::<Rational>().map_err(|e| e.to_string())?, 0),
        [c, t] => (
            c.parse::<Rational>().map_err(|e| e.to_string())?,
            parse_power(t)?,
        ),
        _ => return Err(format!("bad coefficient {tok:?}")),
    };
    Ok(UniPoly::monomial(num, power))
}

fn parse_power(t: &str) -> Result<usize, String> {
    match t {
        "t" => Ok(1),
        _ => t
            .strip_prefix("t^")
            .and_then(|p| p.parse::<usize>().ok())
            .ok_or_else(|| format!("bad power {t:?}")),
    }
}

fn parse_bracket(line: &str, labels: &[String]) -> Result<(usize, usize, Vec<UniPoly>), String> {
    let (lhs, rhs) = line.split_once('=').ok_or("missing '='")?;
    let inner = lhs
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| format!("bad bracket {:?}", lhs.trim()))?;
    let (a, b) = inner.split_once(',').ok_or("bracket needs two entries")?;
    let (i, j) = (resolve(a, labels)?, resolve(b, labels)?);
    let mut out = vec![UniPoly::zero(); labels.len()];
    let rhs = rhs.trim();
    if rhs != "0" {
        for summand in rhs.split('+') {
            let summand = summand.trim();
            let (coeff, label) = match summand.split_once('*') {
                Some((c, l)) => (parse_coeff(c.trim())?, l),
                None if summand.starts_with('-') => {
                    (UniPoly::constant(Rational::from_int(-1)), &summand[1..])
                }
                None => (UniPoly::one(), summand),
            };
            let k = resolve(label, labels)?;
            out[k] = &out[k] + &coeff;
        }
    }
    Ok((i, j, out))
}

/// Checks `c[i][i] = 0`, `c[i][j] = −c[j][i]` and the Jacobi identity
/// exactly, in that order, reporting the first failure.
pub fn sc_validate(l: &ScAlgebra) -> Result<(), ScViolation> {
    let d = l.dim();
    let lab = |i: usize| l.labels[i].clone();
    for i in 0..d {
        if l.table[i][i].iter().any(|c| !c.is_zero()) {
            return Err(ScViolation::Antisymmetry {
                i: lab(i),
                j: lab(i),
            });
        }
    }
    for i in 0..d {
        for j in 0..i {
            let ok = l.table[i][j]
                .iter()
                .zip(&l.table[j][i])
                .all(|(a, b)| (a + b).is_zero());
            if !ok {
                return Err(ScViolation::Antisymmetry {
                    i: lab(i),
                    j: lab(j),
                });
            }
        }
    }
    for i in 0..d {
        for j in (i + 1)..d {
            for k in (j + 1)..d {
                let (ei, ej, ek) = (l.basis(i), l.basis(j), l.basis(k));
                let a = l.bracket_unchecked(&ei, &l.bracket_unchecked(&ej, &ek));
                let b = l.bracket_unchecked(&ej, &l.bracket_unchecked(&ek, &ei));
                let c = l.bracket_unchecked(&ek, &l.bracket_unchecked(&ei, &ej));
                let sum = a.zip(&b, |x, y| x + y).zip(&c, |x, y| x + y);
                if !sum.is_zero() {
                    return Err(ScViolation::Jacobi {
                        i: lab(i),
                        j: lab(j),
                        k: lab(k),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Bilinear bracket through the structure constants.
pub fn sc_bracket(l: &ScAlgebra, u: &ScElement, v: &ScElement) -> Result<ScElement, ScError> {
    for e in [u, v] {
        if e.dim() != l.dim() {
            return Err(ScError::DimensionMismatch {
                expected: l.dim(),
                got: e.dim(),
            });
        }
    }
    Ok(l.bracket_unchecked(u, v))
}

impl LinearSpace for ScAlgebra {
    type Elem = ScElement;

    fn zero(&self) -> ScElement {
        ScElement {
            coeffs: vec![UniPoly::zero(); self.dim()],
        }
    }
    fn add(&self, a: &ScElement, b: &ScElement) -> ScElement {
        a.zip(b, |x, y| x + y)
    }
    fn scale(&self, a: &ScElement, c: &Rational) -> ScElement {
        ScElement {
            coeffs: a.coeffs.iter().map(|x| x.scale(c)).collect(),
        }
    }
    fn is_zero(&self, a: &ScElement) -> bool {
        a.is_zero()
    }
}

impl AdModule for ScAlgebra {
    /// Panics on a dimension mismatch; elements built from this algebra
    /// always match.
    fn bracket(&self, a: &ScElement, b: &ScElement) -> ScElement {
        sc_bracket(self, a, b).expect("ScElement dimension mismatch")
    }
}

/// `{X, Y, Z}` with `[X,Y] = Z`, `[X,Z] = a Y`, `[Y,Z] = 0`, `a = t`.
pub const EXAMPLE1_TEXT: &str = include_str!("../../data/example1.sc");
/// `{W, X, Y, I}` with `[W,X] = −s X`, `[W,Y] = s Y`, `[X,Y] = s I`, `I`
/// central, `s = t`.
pub const EXAMPLE2_TEXT: &str = include_str!("../../data/example2.sc");

pub fn example1_algebra() -> ScAlgebra {
    ScAlgebra::parse(EXAMPLE1_TEXT, "example1.sc").expect("bundled file parses")
}

pub fn example2_algebra() -> ScAlgebra {
    ScAlgebra::parse(EXAMPLE2_TEXT, "example2.sc").expect("bundled file parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_algebras_validate() {
        assert_eq!(sc_validate(&example1_algebra()), Ok(()));
        assert_eq!(sc_validate(&example2_algebra()), Ok(()));
    }

    #[test]
    fn example1_brackets() {
        let l = example1_algebra();
        let (x, y, z) = (l.element("X"), l.element("Y"), l.element("Z"));
        let xy = sc_bracket(&l, &x, &y).unwrap();
        assert_eq!(xy, z);
        assert!(sc_bracket(&l, &y, &xy).unwrap().is_zero());
        assert_eq!(
            sc_bracket(&l, &x, &xy).unwrap(),
            y.times_poly(&UniPoly::t())
        );
    }

    #[test]
    fn tampered_antisymmetry_names_pair() {
        let text = "basis X Y Z\n[X,Y] = 1 * Z\n[Y,X] = 1 * Z\n";
        let l = ScAlgebra::parse(text, "mem").unwrap();
        assert_eq!(
            sc_validate(&l),
            Err(ScViolation::Antisymmetry {
                i: "Y".into(),
                j: "X".into()
            })
        );
    }

    #[test]
    fn jacobi_violation_reported() {
        // antisymmetric but not a Lie algebra
        let text = "basis A B C\n[A,B] = C\n[B,C] = A\n[A,C] = A\n";
        let l = ScAlgebra::parse(text, "mem").unwrap();
        assert!(matches!(sc_validate(&l), Err(ScViolation::Jacobi { .. })));
    }

    #[test]
    fn parse_errors_carry_line() {
        let e = ScAlgebra::parse("basis X Y\n[X,Q] = X\n", "mem").unwrap_err();
        assert!(matches!(e, ScError::Parse { line: 2, .. }), "{e:?}");
        let e = ScAlgebra::parse("dimension 3\nbasis X Y\n", "mem").unwrap_err();
        assert!(matches!(e, ScError::Parse { .. }));
    }

    #[test]
    fn text_round_trip() {
        for l in [example1_algebra(), example2_algebra()] {
            assert_eq!(ScAlgebra::parse(&l.to_text(), "mem").unwrap(), l);
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let l = example1_algebra();
        let short = ScElement::new(vec![UniPoly::one()]);
        assert!(matches!(
            sc_bracket(&l, &short, &l.basis(0)),
            Err(ScError::DimensionMismatch {
                expected: 3,
                got: 1
            })
        ));
    }
}
