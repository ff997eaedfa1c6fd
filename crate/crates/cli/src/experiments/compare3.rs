//! Average and edge (5th percentile) throughput of the no-ICIC, static-ICIC
//! and adaptive-ICIC systems over random 3-cell drops, per edge SNR.

use anyhow::Result;
use icic_core::checks::{mean_ci, percentile};
use icic_core::coordinator::select_joint;
use icic_core::rates::user_rate;
use icic_core::strategy::StrategyProfile;
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::csvout::{fmt, CsvTable};

pub struct SystemRates {
    pub no_icic: Vec<f64>,
    pub static_icic: Vec<f64>,
    pub adaptive: Vec<f64>,
}

/// Pooled per-user analytic rates of the three systems over the ensemble.
pub fn system_rates(cfg: &ExperimentConfig, p0_db: f64) -> Result<SystemRates> {
    let budgets = super::three_cell_budgets(cfg, p0_db)?;
    let per: Result<Vec<(Vec<f64>, Vec<f64>, Vec<f64>)>> = budgets
        .par_iter()
        .map(|budget| {
            let no: icic_core::Result<Vec<f64>> = (0..3)
                .map(|u| user_rate(&StrategyProfile::all_beamform(3), budget, None, u))
                .collect();
            let st: icic_core::Result<Vec<f64>> = (0..3)
                .map(|u| user_rate(&StrategyProfile::all_cancel_both(3), budget, None, u))
                .collect();
            let (_, report) = select_joint(budget, cfg.nt, None)?;
            Ok((no?, st?, report.user_rates))
        })
        .collect();
    let mut out = SystemRates { no_icic: vec![], static_icic: vec![], adaptive: vec![] };
    for (no, st, ad) in per? {
        out.no_icic.extend(no);
        out.static_icic.extend(st);
        out.adaptive.extend(ad);
    }
    Ok(out)
}

pub fn run(cfg: &ExperimentConfig) -> Result<CsvTable> {
    let mut table = CsvTable::new(&[
        "p0_db",
        "no_avg",
        "no_ci95",
        "no_p5",
        "static_avg",
        "static_ci95",
        "static_p5",
        "adaptive_avg",
        "adaptive_ci95",
        "adaptive_p5",
        "adaptive_avg_gain_pct",
        "adaptive_edge_gain_pct",
    ]);
    for &p0_db in &cfg.p0_db {
        let rates = system_rates(cfg, p0_db)?;
        let (no_avg, no_ci) = mean_ci(&rates.no_icic);
        let (st_avg, st_ci) = mean_ci(&rates.static_icic);
        let (ad_avg, ad_ci) = mean_ci(&rates.adaptive);
        let no_p5 = percentile(&rates.no_icic, 5.0);
        let st_p5 = percentile(&rates.static_icic, 5.0);
        let ad_p5 = percentile(&rates.adaptive, 5.0);
        table.push(vec![
            fmt(p0_db),
            fmt(no_avg),
            fmt(no_ci),
            fmt(no_p5),
            fmt(st_avg),
            fmt(st_ci),
            fmt(st_p5),
            fmt(ad_avg),
            fmt(ad_ci),
            fmt(ad_p5),
            fmt(100.0 * (ad_avg / no_avg - 1.0)),
            fmt(100.0 * (ad_p5 / no_p5 - 1.0)),
        ]);
    }
    Ok(table)
}
