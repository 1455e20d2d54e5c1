use rayon::prelude::*;
use serde::Serialize;
use twofloat::TwoFloat;

use super::{csv_header, fmt_f64, ExperimentConfig, ExperimentError, ExperimentId};
use crate::backends::{expm, norm2, random_matrix, Matrix, Precision, Real};
use crate::engine::{psi_std_sequence, psi_sym_sequence};

/// Error of both truncated products at one degree. Degrees past the point
/// where a product stopped being finite read as infinite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Fig2Row {
    pub norm: f64,
    pub n: usize,
    pub error_symmetric: f64,
    pub error_standard: f64,
    /// Even `n`: the symmetric product has no new factor, so its error is
    /// the one at `n - 1`.
    pub symmetric_carried: bool,
}

/// Errors `‖e^{X+Y} − Ψ_n‖` for `n = 1..=n_max`, indexed by `n - 1`.
fn pair_errors<S: Real>(
    x: &Matrix<f64>,
    y: &Matrix<f64>,
    n_max: usize,
) -> Result<(Vec<f64>, Vec<f64>), ExperimentError> {
    let (x, y) = (Matrix::<S>::from_f64(x), Matrix::<S>::from_f64(y));
    let exact = expm(&x.add(&y))?;
    let err = |p: &Matrix<S>| norm2(&p.sub(&exact).to_f64());

    let mut sym = vec![f64::INFINITY; n_max];
    let mut last = f64::INFINITY;
    let seq = psi_sym_sequence(&x, &y, S::one(), n_max)?;
    let mut seq = seq.iter().peekable();
    for (i, slot) in sym.iter_mut().enumerate() {
        let n = i + 1;
        if let Some((_, p)) = seq.next_if(|(k, _)| *k == n) {
            last = err(p);
        } else if n % 2 == 1 {
            last = f64::INFINITY;
        }
        *slot = last;
    }

    let mut std = vec![f64::INFINITY; n_max];
    for (k, p) in psi_std_sequence(&x, &y, S::one(), n_max)? {
        std[k - 1] = err(&p);
    }
    Ok((sym, std))
}

/// One random pair per norm and trial: trial `t` uses seeds `seed + 2t` and
/// `seed + 2t + 1`, both scaled to the target spectral norm. Errors are
/// averaged over trials.
pub fn run_fig2(cfg: &ExperimentConfig) -> Result<Vec<Fig2Row>, ExperimentError> {
    cfg.validate()?;
    let n_max = cfg.max_degree;
    let jobs: Vec<(f64, usize)> = cfg
        .norms
        .iter()
        .flat_map(|&norm| (0..cfg.trials).map(move |t| (norm, t)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(norm, t)| {
            let s = cfg.seed + 2 * t as u64;
            let x = random_matrix(cfg.dimension, norm, s)?;
            let y = random_matrix(cfg.dimension, norm, s + 1)?;
            match cfg.precision {
                Precision::Double => pair_errors::<f64>(&x, &y, n_max),
                Precision::Extended => pair_errors::<TwoFloat>(&x, &y, n_max),
            }
        })
        .collect::<Result<Vec<_>, ExperimentError>>()?;

    let mut rows = Vec::with_capacity(cfg.norms.len() * n_max);
    for (ni, &norm) in cfg.norms.iter().enumerate() {
        let trials = &results[ni * cfg.trials..(ni + 1) * cfg.trials];
        let mean = |pick: &dyn Fn(&(Vec<f64>, Vec<f64>)) -> f64| {
            trials.iter().map(pick).sum::<f64>() / cfg.trials as f64
        };
        for n in 1..=n_max {
            rows.push(Fig2Row {
                norm,
                n,
                error_symmetric: mean(&|r| r.0[n - 1]),
                error_standard: mean(&|r| r.1[n - 1]),
                symmetric_carried: n % 2 == 0,
            });
        }
    }
    Ok(rows)
}

pub fn fig2_csv(cfg: &ExperimentConfig, rows: &[Fig2Row]) -> String {
    let mut out = csv_header(ExperimentId::Fig2, cfg.seed);
    out.push_str("norm,n,error_symmetric,error_standard,symmetric_carried\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.norm,
            r.n,
            fmt_f64(r.error_symmetric),
            fmt_f64(r.error_standard),
            r.symmetric_carried
        ));
    }
    out
}
