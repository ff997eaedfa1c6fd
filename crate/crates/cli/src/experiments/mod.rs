//! Experiment implementations behind the CLI subcommands.

pub mod compare3;
pub mod csicost;
pub mod feedback;
pub mod regions;
pub mod simvcalc;
pub mod validate;

use anyhow::Result;
use icic_core::mcsim::substream;
use icic_core::network::{build_scenario, Layout, LinkBudget, Placement, ShadowRegion};
use rand::Rng;
use rayon::prelude::*;

use crate::config::ExperimentConfig;

/// Axis sweep positions for 2-cell experiments: `step, 2·step, ...` up to
/// (but excluding) the BS position.
pub fn axis_sweep(step: f64) -> Vec<f64> {
    let mut xs = Vec::new();
    let mut k = 1;
    loop {
        let x = step * k as f64;
        if x >= 0.999 {
            break;
        }
        xs.push(x);
        k += 1;
    }
    xs
}

/// Deterministic per-placement 3-cell budgets for one P0; placement `k`
/// reuses the same user drop across different P0 values.
pub fn three_cell_budgets(cfg: &ExperimentConfig, p0_db: f64) -> Result<Vec<LinkBudget>> {
    let region = ShadowRegion { radius_frac: cfg.radius_frac, min_bs_frac: cfg.min_bs_frac };
    (0..cfg.placements)
        .into_par_iter()
        .map(|k| {
            let placement_seed = substream(cfg.seed, 0x504c_4143, k).random::<u64>();
            let (_, budget) = build_scenario(
                Layout::ThreeCell,
                &Placement::RandomShadow(region),
                p0_db,
                cfg.alpha,
                cfg.nt,
                cfg.cell_radius,
                placement_seed,
            )?;
            Ok(budget)
        })
        .collect()
}

/// Compact CSV-safe label for a profile: `BF-IC`, `IC2-BF-IC01`, ...
pub fn csv_label(profile: &icic_core::strategy::StrategyProfile) -> String {
    profile
        .strategies
        .iter()
        .map(|s| match s {
            icic_core::strategy::Strategy::Beamform => "BF".to_string(),
            icic_core::strategy::Strategy::Cancel(v) => {
                format!("IC{}", v.iter().map(|i| i.to_string()).collect::<String>())
            }
        })
        .collect::<Vec<_>>()
        .join("-")
}
