use std::fmt;

use super::ExperimentError;
use crate::backends::{
    collapse_middle, sc_validate, CollapsedMiddle, ScAlgebra, EXAMPLE1_TEXT, EXAMPLE2_TEXT,
};
use crate::engine::sym_terms;
use crate::exact_arith::{Rational, UniPoly};

/// One exact comparison; `expected` and `computed` are printed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleCheck {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExamplesReport {
    pub checks: Vec<ExampleCheck>,
}

impl ExamplesReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ExampleCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: impl Into<String>, expected: &UniPoly, computed: &UniPoly) {
        self.checks.push(ExampleCheck {
            name: name.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            passed: expected == computed,
        });
    }
}

impl fmt::Display for ExamplesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed {
                writeln!(f, "ok   {}: {}", c.name, c.computed)?;
            } else {
                writeln!(
                    f,
                    "FAIL {}: expected {}, computed {}",
                    c.name, c.expected, c.computed
                )?;
            }
        }
        Ok(())
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("nonzero denominator")
}

fn parse_checked(text: &str, origin: &str) -> Result<ScAlgebra, ExperimentError> {
    let l = ScAlgebra::parse(text, origin)?;
    sc_validate(&l)?;
    Ok(l)
}

fn collapsed(
    l: &ScAlgebra,
    first: &str,
    second: &str,
    n: usize,
) -> Result<Option<CollapsedMiddle>, ExperimentError> {
    for label in [first, second] {
        if l.index_of(label).is_none() {
            return Err(ExperimentError::Config(format!(
                "basis has no element {label}"
            )));
        }
    }
    let terms = sym_terms(l, &l.element(first), &l.element(second), n)?;
    Ok(collapse_middle(l, &terms))
}

/// Keeps the terms of degree `≤ d`.
fn truncate(p: &UniPoly, d: usize) -> UniPoly {
    UniPoly::from_coeffs(p.coeffs().iter().take(d + 1).cloned().collect())
}

/// Checks the bundled algebras against their known closed forms.
pub fn run_examples() -> Result<ExamplesReport, ExperimentError> {
    run_examples_from(EXAMPLE1_TEXT, EXAMPLE2_TEXT)
}

/// Same checks on caller-supplied structure constants. The first algebra
/// needs basis elements `X`, `Y`; the second `W`, `X`. Both are validated
/// before use.
pub fn run_examples_from(
    example1: &str,
    example2: &str,
) -> Result<ExamplesReport, ExperimentError> {
    let l1 = parse_checked(example1, "example1")?;
    let l2 = parse_checked(example2, "example2")?;
    let mut report = ExamplesReport::default();
    let none = UniPoly::zero();

    // e^{X+Y} = e^{X/2} e^{f(a) Y} e^{X/2}: every C_k is a multiple of Y
    let c1 = collapsed(&l1, "X", "Y", 7)?;
    let expected1 = [(3, q(1, 48), 1), (5, q(1, 3840), 2), (7, q(1, 645120), 3)];
    for (k, c, p) in expected1 {
        let want = UniPoly::monomial(c, p);
        let got = c1
            .as_ref()
            .filter(|m| m.label == "Y")
            .and_then(|m| m.coefficients.get(&k))
            .unwrap_or(&none);
        report.push(format!("example1 C{k}"), &want, got);
    }
    // 1 + Σ 2m_k against 2 sinh(√a/2)/√a = Σ a^n / (4^n (2n+1)!)
    let series = UniPoly::from_coeffs(
        (0..=3u32)
            .map(|n| &Rational::pow2(-2 * n as i32) * &Rational::inv_factorial(2 * n + 1))
            .collect(),
    );
    let got = c1
        .as_ref()
        .map_or(UniPoly::zero(), |m| &UniPoly::one() + &m.doubled_sum);
    report.push("example1 middle factor", &series, &truncate(&got, 3));

    // e^{X+W} = e^{X/2} e^{W/2} e^{g(s) X} e^{W/2} e^{X/2}, g = Σ d_k s^{k-1}
    let c2 = collapsed(&l2, "X", "W", 9)?;
    let expected2 = [
        (3, q(-1, 12)),
        (5, q(-1, 480)),
        (7, q(-1, 53760)),
        (9, q(-1, 11612160)),
    ];
    for (k, d) in expected2 {
        let want = UniPoly::monomial(d, k - 1);
        let got = c2
            .as_ref()
            .filter(|m| m.label == "X")
            .and_then(|m| m.coefficients.get(&k))
            .map_or(UniPoly::zero(), |m| m.scale(&Rational::from_int(2)));
        report.push(format!("example2 d{k}"), &want, &got);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_examples_pass() {
        let r = run_examples().unwrap();
        assert_eq!(r.checks.len(), 8);
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn wrong_constant_is_reported() {
        let text = EXAMPLE1_TEXT.replace("[X,Z] = 1 t * Y", "[X,Z] = 2 t * Y");
        let r = run_examples_from(&text, EXAMPLE2_TEXT).unwrap();
        let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&"example1 C3"));
        assert!(r
            .to_string()
            .contains("FAIL example1 C3: expected 1/48 t, computed 1/24 t"));
    }

    #[test]
    fn jacobi_violation_names_triple() {
        let text = EXAMPLE2_TEXT.replace("[W,X] = -1 t * X", "[W,X] = -1 t * Y");
        match run_examples_from(EXAMPLE1_TEXT, &text) {
            Err(ExperimentError::Violation(v)) => assert!(v.to_string().contains("Jacobi")),
            other => panic!("{other:?}"),
        }
    }
}
