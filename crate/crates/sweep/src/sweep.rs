use rayon::prelude::*;

use crate::config::{Method, SweepConfig};
use crate::error::{Result, SweepError};
use crate::rows::{evaluate_point, kstate_row, ResultRow};

/// Evaluates the full (χ, v_x, method) grid in parallel. Rows come back in
/// that lexicographic order (configured order within each axis), followed by
/// the `|K⟩` rows when `kstates` is requested.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<ResultRow>> {
    cfg.validate()?;
    let grid = cfg.vx_grid.values();
    let methods: Vec<Method> = cfg
        .methods
        .iter()
        .copied()
        .filter(|m| *m != Method::Kstates)
        .collect();
    let mut tasks: Vec<(f64, f64, Method)> = Vec::new();
    for &chi in &cfg.chi_list {
        for &vx in &grid {
            tasks.extend(methods.iter().map(|&m| (chi, vx, m)));
        }
    }
    let evaluate = || -> Result<Vec<ResultRow>> {
        tasks
            .par_iter()
            .map(|&(chi, vx, m)| evaluate_point(m, cfg.omega, cfg.eps, chi, vx))
            .collect()
    };
    let mut rows = match cfg.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| SweepError::Pool(e.to_string()))?
            .install(evaluate)?,
        None => evaluate()?,
    };
    if cfg.methods.contains(&Method::Kstates) {
        for k in 0..=cfg.omega {
            rows.push(kstate_row(cfg.omega, k)?);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::VxGrid;

    #[test]
    fn row_count_and_order() {
        let cfg = SweepConfig {
            omega: 8,
            chi_list: vec![0.0, 0.5],
            vx_grid: VxGrid {
                min: 0.0,
                max: 2.0,
                steps: 5,
            },
            methods: vec![Method::Mf, Method::Exact, Method::Kstates],
            jobs: Some(3),
            ..SweepConfig::default()
        };
        let rows = run_sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 2 * 5 * 2 + 9);
        assert_eq!(
            (rows[0].chi, rows[0].vx_over_eps, rows[0].method),
            (0.0, 0.0, Method::Mf)
        );
        assert_eq!(rows[1].method, Method::Exact);
        assert_eq!(rows[2].vx_over_eps, 0.5);
        assert_eq!(rows[10].chi, 0.5);
        assert!(rows[20..].iter().all(|r| r.method == Method::Kstates));
    }

    #[test]
    fn single_step_at_zero() {
        let cfg = SweepConfig {
            vx_grid: VxGrid {
                min: 0.0,
                max: 0.0,
                steps: 1,
            },
            methods: vec![Method::Exact],
            ..SweepConfig::default()
        };
        let rows = run_sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].one_body_e_per_2omega, 0.0);
        assert_eq!(rows[0].concurrence, 0.0);
    }
}
