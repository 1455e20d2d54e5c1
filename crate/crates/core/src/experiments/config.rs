use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::ExperimentError;
use crate::backends::Precision;
use crate::exact_arith::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentId {
    Fig2,
    Fig3,
    Boundary,
    Terms,
    Examples,
}

impl std::fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ExperimentId::Fig2 => "fig2",
            ExperimentId::Fig3 => "fig3",
            ExperimentId::Boundary => "boundary",
            ExperimentId::Terms => "terms",
            ExperimentId::Examples => "examples",
        })
    }
}

/// Parameters of one experiment run. Every field has a default, so a
/// config file only lists what it changes; unknown keys are rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub experiment: ExperimentId,
    pub seed: u64,
    /// Matrix size for the random pairs.
    pub dimension: usize,
    /// Spectral norms of the random pairs, both matrices scaled alike.
    pub norms: Vec<f64>,
    /// Pairs per norm; errors are averaged over them.
    pub trials: usize,
    /// Highest degree for `fig2` and `terms`.
    pub max_degree: usize,
    /// Degrees compared in `fig3`.
    pub n_list: Vec<usize>,
    pub lambdas: Vec<f64>,
    /// Parameter of the commuting-exponential pair, as `p/q`.
    pub alpha: String,
    pub precision: Precision,
    /// Recursion depth for the convergence scan.
    pub depth: usize,
    /// Convergence scan grid: first x, last x, number of points.
    pub scan: (f64, f64, usize),
    /// Report the boundary of the domain united with its `x ↔ y` reflection.
    pub mirror: bool,
    pub out: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            experiment: ExperimentId::Fig2,
            seed: 1,
            dimension: 20,
            norms: vec![0.5, 2.5],
            trials: 1,
            max_degree: 51,
            n_list: vec![51, 101, 201],
            lambdas: (1..=100).map(|i| i as f64 / 100.0).collect(),
            alpha: "1/5".into(),
            precision: Precision::Double,
            depth: 401,
            scan: (0.001, 3.0, 121),
            mirror: false,
            out: None,
        }
    }
}

impl ExperimentConfig {
    pub fn for_experiment(experiment: ExperimentId) -> Self {
        ExperimentConfig {
            experiment,
            ..Default::default()
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, ExperimentError> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| ExperimentError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ExperimentError> {
        let text = std::fs::read_to_string(path).map_err(|e| ExperimentError::io(path, e))?;
        Self::from_toml(&text).map_err(|e| match e {
            ExperimentError::Config(m) => {
                ExperimentError::Config(format!("{}: {m}", path.display()))
            }
            other => other,
        })
    }

    pub fn alpha(&self) -> Result<Rational, ExperimentError> {
        self.alpha.parse::<Rational>().map_err(|_| {
            ExperimentError::Config(format!("alpha {:?} is not a fraction", self.alpha))
        })
    }

    /// Evenly spaced scan grid including both ends.
    pub fn scan_grid(&self) -> Vec<f64> {
        let (x0, x1, steps) = self.scan;
        if steps == 1 {
            return vec![x0];
        }
        (0..steps)
            .map(|i| x0 + (x1 - x0) * i as f64 / (steps - 1) as f64)
            .collect()
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: String| Err(ExperimentError::Config(m));
        if self.dimension == 0 {
            return bad("dimension must be positive".into());
        }
        if self.norms.is_empty() || self.norms.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
            return bad(format!("norms must be positive, got {:?}", self.norms));
        }
        if self.trials == 0 {
            return bad("trials must be positive".into());
        }
        if self.experiment == ExperimentId::Fig2 && self.max_degree < 5 {
            return bad(format!(
                "max_degree must be at least 5, got {}",
                self.max_degree
            ));
        }
        if self.experiment == ExperimentId::Terms && self.max_degree < 3 {
            return bad(format!(
                "max_degree must be at least 3, got {}",
                self.max_degree
            ));
        }
        if self.n_list.is_empty() || self.n_list.iter().any(|&n| n < 3) {
            return bad(format!(
                "n_list entries must be at least 3, got {:?}",
                self.n_list
            ));
        }
        if self.lambdas.is_empty() || self.lambdas.iter().any(|&l| !(l > 0.0 && l <= 1.0)) {
            return bad("lambdas must lie in (0, 1]".into());
        }
        if self.alpha()?.is_zero() {
            return bad("alpha must be nonzero".into());
        }
        if self.depth % 2 == 0 || self.depth < 5 {
            return bad(format!(
                "depth must be odd and at least 5, got {}",
                self.depth
            ));
        }
        let (x0, x1, steps) = self.scan;
        if steps == 0 || !(x0 >= 0.0) || !(x1 >= x0) || !x1.is_finite() {
            return bad(format!(
                "scan must satisfy 0 <= x0 <= x1 with steps > 0, got {:?}",
                self.scan
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_config_uses_defaults() {
        let cfg = ExperimentConfig::from_toml(
            "experiment = \"fig3\"\nseed = 9\nprecision = \"extended\"\n",
        )
        .unwrap();
        assert_eq!(cfg.experiment, ExperimentId::Fig3);
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.precision, Precision::Extended);
        assert_eq!(cfg.n_list, vec![51, 101, 201]);
    }

    #[test]
    fn unknown_and_invalid_keys_rejected() {
        assert!(ExperimentConfig::from_toml("experiment = \"fig2\"\ncolour = 3\n").is_err());
        assert!(ExperimentConfig::from_toml("norms = [0.5, -1.0]\n").is_err());
        assert!(ExperimentConfig::from_toml("alpha = \"0\"\n").is_err());
        assert!(ExperimentConfig::from_toml("lambdas = [0.0]\n").is_err());
    }

    #[test]
    fn scan_grid_endpoints() {
        let cfg = ExperimentConfig {
            scan: (0.0, 1.0, 5),
            ..Default::default()
        };
        assert_eq!(cfg.scan_grid(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }
}
