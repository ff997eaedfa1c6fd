//! CSI requirement (channel directions to learn) of the three systems,
//! placement-averaged per edge SNR.

use anyhow::Result;
use icic_core::coordinator::{csi_cost, select_joint};
use icic_core::strategy::StrategyProfile;
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::csvout::{fmt, CsvTable};

pub fn run(cfg: &ExperimentConfig) -> Result<CsvTable> {
    let mut table =
        CsvTable::new(&["p0_db", "no_icic", "static_icic", "adaptive_mean", "adaptive_ci95"]);
    for &p0_db in &cfg.p0_db {
        let budgets = super::three_cell_budgets(cfg, p0_db)?;
        let costs: Result<Vec<f64>> = budgets
            .par_iter()
            .map(|b| {
                let (profile, _) = select_joint(b, cfg.nt, None)?;
                Ok(csi_cost(&profile) as f64)
            })
            .collect();
        let costs = costs?;
        let (mean, ci) = icic_core::checks::mean_ci(&costs);
        table.push(vec![
            fmt(p0_db),
            fmt(csi_cost(&StrategyProfile::all_beamform(3)) as f64),
            fmt(csi_cost(&StrategyProfile::all_cancel_both(3)) as f64),
            fmt(mean),
            fmt(ci),
        ]);
    }
    Ok(table)
}
