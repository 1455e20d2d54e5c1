use rayon::prelude::*;
use serde::Serialize;
use twofloat::TwoFloat;

use super::{csv_header, fmt_f64, ExperimentConfig, ExperimentError, ExperimentId};
use crate::backends::{expm, frechet_pair, norm2, Matrix, Precision, Real};
use crate::engine::{psi_std_sequence, psi_sym_sequence};
use crate::exact_arith::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Fig3Row {
    pub n: usize,
    pub lambda: f64,
    pub error_symmetric: f64,
    pub error_standard: f64,
}

/// The decimal a grid value was written as, so that `0.13` means 13/100
/// rather than the nearest double.
fn decimal_rational(v: f64) -> Rational {
    let text = format!("{v}");
    let (int, frac) = text.split_once('.').unwrap_or((&text, ""));
    let digits = format!("{int}{frac}");
    match (digits.parse::<i64>(), 10i64.checked_pow(frac.len() as u32)) {
        (Ok(num), Some(den)) => Rational::new(num, den).expect("nonzero denominator"),
        _ => Rational::from_f64(v).expect("finite grid value"),
    }
}

/// `(n, error_symmetric, error_standard)` at one `λ` for every `n` in `ns`.
fn errors_at<S: Real>(
    x: &Matrix<S>,
    y: &Matrix<S>,
    lambda: &Rational,
    ns: &[usize],
) -> Result<Vec<(usize, f64, f64)>, ExperimentError> {
    let l = S::from_rational(lambda);
    let n_max = *ns.iter().max().expect("nonempty n_list");
    let exact = expm(&x.add(y).scale(l))?;
    let err = |p: &Matrix<S>| norm2(&p.sub(&exact).to_f64());
    let sym = psi_sym_sequence(x, y, l, n_max)?;
    let std = psi_std_sequence(x, y, l, n_max)?;
    Ok(ns
        .iter()
        .map(|&n| {
            let odd = n - (1 - n % 2);
            let es = sym
                .iter()
                .find(|(k, _)| *k == odd)
                .map_or(f64::INFINITY, |(_, p)| err(p));
            let et = std
                .iter()
                .find(|(k, _)| *k == n)
                .map_or(f64::INFINITY, |(_, p)| err(p));
            (n, es, et)
        })
        .collect())
}

fn sweep<S: Real>(cfg: &ExperimentConfig) -> Result<Vec<Fig3Row>, ExperimentError> {
    let (x, y) = frechet_pair::<S>(&cfg.alpha()?)?;
    let per_lambda = cfg
        .lambdas
        .par_iter()
        .map(|&lambda| {
            let errs = errors_at(&x, &y, &decimal_rational(lambda), &cfg.n_list)?;
            Ok(errs
                .into_iter()
                .map(|(n, es, et)| Fig3Row {
                    n,
                    lambda,
                    error_symmetric: es,
                    error_standard: et,
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>, ExperimentError>>()?;
    let mut rows: Vec<Fig3Row> = per_lambda.into_iter().flatten().collect();
    rows.sort_by(|a, b| a.n.cmp(&b.n).then(a.lambda.total_cmp(&b.lambda)));
    Ok(rows)
}

/// Errors `‖e^{λ(X+Y)} − Ψ_n(λ)‖` over the λ grid for the commuting
/// exponential pair, for each degree in `n_list`. Rows are ordered by `n`,
/// then `λ`; products that overflow read as infinite.
pub fn run_fig3(cfg: &ExperimentConfig) -> Result<Vec<Fig3Row>, ExperimentError> {
    cfg.validate()?;
    match cfg.precision {
        Precision::Double => sweep::<f64>(cfg),
        Precision::Extended => sweep::<TwoFloat>(cfg),
    }
}

pub fn fig3_csv(cfg: &ExperimentConfig, rows: &[Fig3Row]) -> String {
    let mut out = csv_header(ExperimentId::Fig3, cfg.seed);
    out.push_str("n,lambda,error_symmetric,error_standard\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            r.lambda,
            fmt_f64(r.error_symmetric),
            fmt_f64(r.error_standard)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_values_read_as_decimals() {
        assert_eq!(decimal_rational(0.13), Rational::new(13, 100).unwrap());
        assert_eq!(decimal_rational(1.0), Rational::one());
        assert_eq!(decimal_rational(0.5), Rational::new(1, 2).unwrap());
    }

    #[test]
    fn small_lambda_rows_sorted_and_accurate() {
        let cfg = ExperimentConfig {
            lambdas: vec![0.02, 0.01],
            n_list: vec![9, 5],
            ..ExperimentConfig::for_experiment(ExperimentId::Fig3)
        };
        let rows = run_fig3(&cfg).unwrap();
        let keys: Vec<(usize, f64)> = rows.iter().map(|r| (r.n, r.lambda)).collect();
        assert_eq!(keys, vec![(5, 0.01), (5, 0.02), (9, 0.01), (9, 0.02)]);
        assert!(rows[2].error_symmetric < rows[0].error_symmetric);
        assert!(rows.iter().all(|r| r.error_symmetric.is_finite()));
    }
}
