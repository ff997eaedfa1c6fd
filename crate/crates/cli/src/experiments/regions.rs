//! Selected strategy pair for every (user 1, user 2) axis position.

use anyhow::Result;
use icic_core::coordinator::select_joint;
use icic_core::network::two_cell_axis_scenario;
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::csvout::{fmt, CsvTable};

pub fn run(cfg: &ExperimentConfig) -> Result<CsvTable> {
    let mut table = CsvTable::new(&["p0_db", "x1", "x2", "profile"]);
    let sweep = super::axis_sweep(cfg.step);
    for &p0_db in &cfg.p0_db {
        let rows: Result<Vec<Vec<String>>> = sweep
            .par_iter()
            .flat_map(|&x1m| sweep.par_iter().map(move |&x2| (x1m, x2)))
            .map(|(x1m, x2)| {
                let x1 = -x1m;
                let (_, budget) =
                    two_cell_axis_scenario(x1, x2, p0_db, cfg.alpha, cfg.nt, cfg.cell_radius)?;
                let (profile, _) = select_joint(&budget, cfg.nt, None)?;
                Ok(vec![fmt(p0_db), fmt(x1), fmt(x2), super::csv_label(&profile)])
            })
            .collect();
        // rayon's collect preserves the logical iteration order.
        for row in rows? {
            table.push(row);
        }
    }
    Ok(table)
}
