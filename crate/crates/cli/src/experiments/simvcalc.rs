//! Analytic vs Monte Carlo sum rates per strategy pair along the 2-cell axis
//! sweep: user 1 fixed, user 2 moving from the shared edge toward its BS.

use anyhow::Result;
use icic_core::coordinator::enumerate_profiles;
use icic_core::mcsim::mc_ergodic_rate;
use icic_core::network::two_cell_axis_scenario;
use icic_core::rates::user_rate;
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::csvout::{fmt, CsvTable};

pub fn run(cfg: &ExperimentConfig) -> Result<CsvTable> {
    let labels = ["bf_bf", "bf_ic", "ic_bf", "ic_ic"];
    let mut columns = vec!["p0_db".to_string(), "x2".to_string()];
    for l in labels {
        columns.push(format!("analytic_{l}"));
        columns.push(format!("mc_{l}"));
        columns.push(format!("ci95_{l}"));
    }
    let cols: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut table = CsvTable::new(&cols);

    let sweep = super::axis_sweep(cfg.step);
    for &p0_db in &cfg.p0_db {
        let rows: Result<Vec<Vec<String>>> = sweep
            .par_iter()
            .map(|&x2| {
                let (_, budget) =
                    two_cell_axis_scenario(cfg.x1, x2, p0_db, cfg.alpha, cfg.nt, cfg.cell_radius)?;
                let mut row = vec![fmt(p0_db), fmt(x2)];
                for profile in enumerate_profiles(&budget, cfg.nt) {
                    let analytic: f64 = (0..2)
                        .map(|u| user_rate(&profile, &budget, None, u))
                        .sum::<icic_core::Result<f64>>()?;
                    let est = mc_ergodic_rate(&budget, &profile, None, cfg.trials, cfg.seed)?;
                    let mc: f64 = est.iter().map(|e| e.mean).sum();
                    // CI of the sum: conservative sum of half-widths.
                    let ci: f64 = est.iter().map(|e| e.half_width_95).sum();
                    row.push(fmt(analytic));
                    row.push(fmt(mc));
                    row.push(fmt(ci));
                }
                Ok(row)
            })
            .collect();
        for row in rows? {
            table.push(row);
        }
    }
    Ok(table)
}
