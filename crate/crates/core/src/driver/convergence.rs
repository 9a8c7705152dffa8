//! Grid refinement studies against the exact dam-break solution.

use super::{Case, RunConfig, SchemeKind, Simulation, Diagnostics};
use crate::error::{ConfigError, RunError};

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub scheme: SchemeKind,
    pub cells: usize,
    pub l1_error: f64,
    /// Order between this row and the previous, coarser row of the same scheme.
    pub observed_order: Option<f64>,
}

/// Order between two refinement levels, measured with the mesh size `h ~ N^{-1/2}`.
pub fn pairwise_order(cells: (usize, usize), errors: (f64, f64)) -> f64 {
    (errors.0 / errors.1).ln() / ((cells.1 as f64 / cells.0 as f64).sqrt()).ln()
}

/// Least-squares slope of `-ln e` against `ln sqrt(N)`.
pub fn fitted_order(rows: &[(usize, f64)]) -> Option<f64> {
    if rows.len() < 2 {
        return None;
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|&(n, e)| (0.5 * (n as f64).ln(), -e.ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Runs the accuracy dam break on `n x n` meshes for every resolution and
/// scheme, reporting the relative L1 error of the depth at the end time.
pub fn convergence_study(
    base: &RunConfig,
    resolutions: &[usize],
    schemes: &[SchemeKind],
) -> Result<Vec<ConvergenceRow>, RunError> {
    if base.case != Case::AccuracyDam {
        return Err(ConfigError::Invalid(format!(
            "convergence studies need the exact solution of accuracy_dam, not {}",
            base.case
        ))
        .into());
    }
    let exact = base.geometry.planar.problem(base.g).solve()?;
    let mut rows = Vec::new();
    for &scheme in schemes {
        let mut prev: Option<(usize, f64)> = None;
        for &n in resolutions {
            let mut cfg = base.clone();
            cfg.scheme = scheme;
            cfg.resolution = Some((n, n));
            cfg.mesh = None;
            cfg.output_dir = None;
            let mut sim = Simulation::from_config(&cfg)?;
            let t_end = cfg.t_end();
            sim.run_until(t_end, &mut Diagnostics::default())?;
            let err = super::l1_relative_error(&sim.mesh, &sim.field, |p, t| exact.sample(p.x, t).0, t_end)?;
            let cells = sim.mesh.n_cells();
            rows.push(ConvergenceRow {
                scheme,
                cells,
                l1_error: err,
                observed_order: prev.map(|(c0, e0)| pairwise_order((c0, cells), (e0, err))),
            });
            prev = Some((cells, err));
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_of_synthetic_sequences() {
        // e = C N^{-p/2}
        let rows: Vec<(usize, f64)> = [100usize, 400, 1600]
            .iter()
            .map(|&n| (n, 3.0 * (n as f64).powf(-0.75)))
            .collect();
        assert!((fitted_order(&rows).unwrap() - 1.5).abs() < 1e-12);
        assert!((pairwise_order((100, 400), (rows[0].1, rows[1].1)) - 1.5).abs() < 1e-12);
        assert_eq!(fitted_order(&rows[..1]), None);
    }

    #[test]
    fn other_cases_are_rejected() {
        let cfg = RunConfig::new(Case::CircularDam);
        assert!(convergence_study(&cfg, &[4], &[SchemeKind::Fvc]).is_err());
    }
}
