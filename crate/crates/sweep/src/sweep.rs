//! Grid sweep of a spin chain's control parameter.

use maxent_core::entanglement::{negativity, pairwise_concurrence};
use maxent_core::maxent::{gibbs_state, ObservableSet};
use rayon::prelude::*;

use crate::config::SweepConfig;
use crate::error::{Result, SweepError};

/// One grid point. Derivatives are taken in the control variable.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub control_value: f64,
    /// `−ln Z / n`.
    pub free_energy: f64,
    pub entropy: f64,
    pub means: Vec<f64>,
    pub concurrence: f64,
    pub negativity: f64,
    pub d_f: f64,
    pub d2_f: f64,
    pub d_c: f64,
    pub d_n: f64,
    /// Grid endpoint: derivatives are one-sided.
    pub one_sided: bool,
}

/// Interior argmax of `|y|` for one derivative column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Marker {
    pub index: usize,
    pub control_value: f64,
    pub value: f64,
}

/// Candidate singularity locations. Reported side by side, never compared.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularityReport {
    pub d2_free_energy: Marker,
    pub d_concurrence: Marker,
    pub d_negativity: Marker,
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub labels: Vec<String>,
    pub records: Vec<SweepRecord>,
    pub report: SingularityReport,
}

struct Point {
    free_energy: f64,
    entropy: f64,
    means: Vec<f64>,
    concurrence: f64,
    negativity: f64,
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutput> {
    let obs: ObservableSet<f64> = config.model.observables()?;
    let grid = config.control.values();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| SweepError::Config(format!("cannot start {} worker threads: {e}", config.threads)))?;
    // Points are independent; collect keeps grid order whatever the scheduling.
    let points: Vec<Point> =
        pool.install(|| grid.par_iter().map(|&x| evaluate(config, &obs, x)).collect::<Result<_>>())?;

    let h = config.control.step();
    let column = |f: fn(&Point) -> f64| points.iter().map(f).collect::<Vec<_>>();
    let f = column(|p| p.free_energy);
    let c = column(|p| p.concurrence);
    let n = column(|p| p.negativity);
    let (d_f, d2_f, d_c, d_n) =
        (first_derivative(&f, h), second_derivative(&f, h), first_derivative(&c, h), first_derivative(&n, h));

    let last = grid.len() - 1;
    let records: Vec<SweepRecord> = points
        .into_iter()
        .enumerate()
        .map(|(k, p)| SweepRecord {
            control_value: grid[k],
            free_energy: p.free_energy,
            entropy: p.entropy,
            means: p.means,
            concurrence: p.concurrence,
            negativity: p.negativity,
            d_f: d_f[k],
            d2_f: d2_f[k],
            d_c: d_c[k],
            d_n: d_n[k],
            one_sided: k == 0 || k == last,
        })
        .collect();

    let report = SingularityReport {
        d2_free_energy: interior_argmax(&grid, &d2_f),
        d_concurrence: interior_argmax(&grid, &d_c),
        d_negativity: interior_argmax(&grid, &d_n),
    };
    for (name, m) in [("d2F", report.d2_free_energy), ("dC", report.d_concurrence), ("dN", report.d_negativity)] {
        if !m.value.is_finite() {
            return Err(
                maxent_core::Error::Range(format!("{name} is not finite at control {}", m.control_value)).into()
            );
        }
    }
    let labels = obs.labels().into_iter().map(String::from).collect();
    Ok(SweepOutput { labels, records, report })
}

fn evaluate(config: &SweepConfig, obs: &ObservableSet<f64>, x: f64) -> Result<Point> {
    let lambda = config.model.multipliers(config.beta, x)?;
    let (ens, rho) = gibbs_state(obs, &lambda)?;
    let (i, j) = config.pair;
    Ok(Point {
        free_energy: ens.free_energy() / config.model.n as f64,
        entropy: ens.entropy(),
        means: ens.means().to_vec(),
        concurrence: pairwise_concurrence(&rho, i, j)?,
        negativity: negativity(&rho, &config.bipartition)?.0,
    })
}

/// Central differences inside, second-order one-sided at the ends.
pub fn first_derivative(y: &[f64], h: f64) -> Vec<f64> {
    let m = y.len();
    assert!(m >= 3, "need at least three grid points");
    (0..m)
        .map(|k| match k {
            0 => (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h),
            k if k == m - 1 => (3.0 * y[k] - 4.0 * y[k - 1] + y[k - 2]) / (2.0 * h),
            k => (y[k + 1] - y[k - 1]) / (2.0 * h),
        })
        .collect()
}

/// Three-point second difference; the ends reuse the nearest interior stencil.
pub fn second_derivative(y: &[f64], h: f64) -> Vec<f64> {
    let m = y.len();
    assert!(m >= 3, "need at least three grid points");
    (0..m)
        .map(|k| {
            let c = k.clamp(1, m - 2);
            (y[c + 1] - 2.0 * y[c] + y[c - 1]) / (h * h)
        })
        .collect()
}

/// First interior index maximizing `|y|`.
fn interior_argmax(grid: &[f64], y: &[f64]) -> Marker {
    let mut best = 1;
    for k in 2..y.len() - 1 {
        if y[k].abs() > y[best].abs() {
            best = k;
        }
    }
    Marker { index: best, control_value: grid[best], value: y[best] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config_str;
    use maxent_core::maxent::{free_energy, Multipliers};
    use maxent_core::models::tfim_observables;

    #[test]
    fn finite_differences_are_exact_on_quadratics() {
        let h = 0.25;
        let xs: Vec<f64> = (0..6).map(|k| k as f64 * h).collect();
        let y: Vec<f64> = xs.iter().map(|x| 3.0 * x * x - x + 2.0).collect();
        for (d, x) in first_derivative(&y, h).iter().zip(&xs) {
            assert!((d - (6.0 * x - 1.0)).abs() < 1e-12);
        }
        assert!(second_derivative(&y, h).iter().all(|d| (d - 6.0).abs() < 1e-11));
    }

    #[test]
    fn argmax_ignores_endpoints() {
        let m = interior_argmax(&[0.0, 1.0, 2.0, 3.0], &[100.0, -2.0, 1.0, 50.0]);
        assert_eq!((m.index, m.control_value, m.value), (1, 1.0, -2.0));
    }

    #[test]
    fn tfim_dimer_matches_direct_library_calls() {
        let cfg = parse_config_str(
            r#"{"model": {"type": "tfim", "n": 2}, "beta": 1.0,
                "control": {"name": "g", "from": 0.5, "to": 1.5, "points": 3}}"#,
        )
        .unwrap();
        let out = run_sweep(&cfg).unwrap();
        assert_eq!(out.labels, vec!["bond", "field"]);
        let set = tfim_observables::<f64>(2, false).unwrap();
        for (rec, g) in out.records.iter().zip([0.5, 1.0, 1.5]) {
            assert_eq!(rec.control_value, g);
            let f = free_energy(&set, &Multipliers::new(vec![1.0, g]).unwrap()).unwrap() / 2.0;
            assert_eq!(rec.free_energy, f);
        }
        assert!(out.records[0].one_sided && !out.records[1].one_sided && out.records[2].one_sided);
        assert_eq!(out.report.d2_free_energy.index, 1);
    }

    #[test]
    fn records_satisfy_free_energy_identity() {
        let cfg = parse_config_str(
            r#"{"model": {"type": "heisenberg", "n": 4, "periodic": true}, "beta": 1.5,
                "control": {"name": "g", "from": 0.0, "to": 2.0, "points": 5}}"#,
        )
        .unwrap();
        let out = run_sweep(&cfg).unwrap();
        for rec in &out.records {
            let lambda = [cfg.beta, cfg.beta * rec.control_value];
            let sla: f64 = rec.means.iter().zip(lambda).map(|(a, l)| a * l).sum();
            // −F_total = S − Σ λ a.
            assert!((-rec.free_energy * 4.0 - (rec.entropy - sla)).abs() < 1e-10);
        }
    }
}
