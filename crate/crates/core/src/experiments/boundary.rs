use super::{csv_header, ExperimentConfig, ExperimentError, ExperimentId};
use crate::convergence::{
    boundary_scan, converges_with_window, crude_r_sequence, ConvergenceVerdict, CrudeEstimate,
    DomainBoundary, DEFAULT_TAIL_WINDOW,
};

/// Depth of the `(x+y)` recursion reported next to the scan. Its tail ratio
/// creeps up slowly with depth, so a deep table is used.
pub const CRUDE_DEPTH: usize = 1601;

/// The two random-pair norms marked on the domain plot.
pub const MARKED_POINTS: [(f64, f64); 2] = [(0.5, 0.5), (2.5, 2.5)];

#[derive(Clone, Debug)]
pub struct BoundaryReport {
    pub boundary: DomainBoundary,
    pub crude: CrudeEstimate,
    pub marked: Vec<((f64, f64), ConvergenceVerdict)>,
}

pub fn run_boundary(cfg: &ExperimentConfig) -> Result<BoundaryReport, ExperimentError> {
    cfg.validate()?;
    let boundary = boundary_scan(&cfg.scan_grid(), cfg.depth, cfg.mirror)?;
    let crude = crude_r_sequence(CRUDE_DEPTH)?;
    let marked = MARKED_POINTS
        .iter()
        .map(|&(x, y)| {
            Ok((
                (x, y),
                converges_with_window(x, y, cfg.depth, DEFAULT_TAIL_WINDOW)?,
            ))
        })
        .collect::<Result<Vec<_>, ExperimentError>>()?;
    Ok(BoundaryReport {
        boundary,
        crude,
        marked,
    })
}

/// Boundary rows `x,y_max,depth`, preceded by comment lines with the crude
/// threshold, the classification of the marked points, and any `x` whose
/// search stopped at the cap.
pub fn boundary_csv(cfg: &ExperimentConfig, report: &BoundaryReport) -> String {
    let mut out = csv_header(ExperimentId::Boundary, cfg.seed);
    out.push_str(&format!(
        "# crude x+y < {:.4} (r_limit {:.4}, depth {CRUDE_DEPTH})\n",
        report.crude.threshold, report.crude.r_limit
    ));
    for ((x, y), v) in &report.marked {
        let side = if v.converges { "inside" } else { "outside" };
        out.push_str(&format!(
            "# point {x},{y} {side} ratio_tail={:.6}\n",
            v.ratio_tail
        ));
    }
    out.push_str(&format!("# mirrored={}\n", report.boundary.mirrored));
    for p in report.boundary.points.iter().filter(|p| p.capped) {
        out.push_str(&format!("# capped x={} y_max>={}\n", p.x, p.y_max));
    }
    out.push_str("x,y_max,depth\n");
    for p in &report.boundary.points {
        out.push_str(&format!("{},{},{}\n", p.x, p.y_max, report.boundary.depth));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let cfg = ExperimentConfig {
            depth: 41,
            scan: (0.1, 0.3, 3),
            ..ExperimentConfig::for_experiment(ExperimentId::Boundary)
        };
        let report = run_boundary(&cfg).unwrap();
        let csv = boundary_csv(&cfg, &report);
        let data: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(data[0], "x,y_max,depth");
        assert_eq!(data.len(), 4);
        assert!(data[1].starts_with("0.1,") && data[1].ends_with(",41"));
        assert!(csv.contains("# point 0.5,0.5 inside"));
        assert!(csv.contains("# point 2.5,2.5 outside"));
    }
}
