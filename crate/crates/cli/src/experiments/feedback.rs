//! Limited-feedback system comparison: helper-bit scaling (`B_I = B*`),
//! fixed home bits, uniform vs adaptive allocation of a 30-bit budget, with
//! perfect-CSI and no-ICIC references.

use std::collections::BTreeMap;

use anyhow::Result;
use icic_core::checks::percentile;
use icic_core::coordinator::{allocate_bits, bstar_bits, select_joint};
use icic_core::rates::user_rate;
use icic_core::strategy::{FeedbackConfig, StrategyProfile};
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::csvout::{fmt, CsvTable};

const ALLOC_PAIRS: [(u32, u32); 5] = [(10, 10), (8, 11), (6, 12), (4, 13), (2, 14)];
const TOTAL_BITS: u32 = 30;
/// Rate-loss target for the B* scaling mode: log2(2) = 1 bps/Hz.
const DELTA_R: f64 = 2.0;

struct ModeRates {
    perfect: Vec<f64>,
    no_icic: Vec<f64>,
    bs_bstar: Vec<f64>,
    bs6: Vec<f64>,
    uniform10: Vec<f64>,
    alloc: Vec<f64>,
    alloc_pairs: Vec<(u32, u32)>,
}

pub fn run(cfg: &ExperimentConfig) -> Result<CsvTable> {
    let mut table = CsvTable::new(&[
        "p0_db",
        "bstar_bits",
        "perfect_avg",
        "perfect_p5",
        "no_icic_avg",
        "no_icic_p5",
        "bi_bstar_avg",
        "bi_bstar_p5",
        "bs6_bi_bstar_avg",
        "bs6_bi_bstar_p5",
        "uniform10_avg",
        "uniform10_p5",
        "alloc_avg",
        "alloc_p5",
        "alloc_modal_pair",
    ]);
    for &p0_db in &cfg.p0_db {
        let p0 = 10f64.powf(p0_db / 10.0);
        let bstar = bstar_bits(p0, cfg.nt, DELTA_R)?;
        let budgets = super::three_cell_budgets(cfg, p0_db)?;
        let per: Result<Vec<_>> = budgets
            .par_iter()
            .map(|budget| {
                let perfect = select_joint(budget, cfg.nt, None)?.1.user_rates;
                let no_icic: icic_core::Result<Vec<f64>> = (0..3)
                    .map(|u| user_rate(&StrategyProfile::all_beamform(3), budget, None, u))
                    .collect();
                let fb_bstar = FeedbackConfig::home_helper(3, bstar, bstar);
                let bs_bstar = select_joint(budget, cfg.nt, Some(&fb_bstar))?.1.user_rates;
                let fb_bs6 = FeedbackConfig::home_helper(3, 6, bstar);
                let bs6 = select_joint(budget, cfg.nt, Some(&fb_bs6))?.1.user_rates;
                let fb_u10 = FeedbackConfig::home_helper(3, 10, 10);
                let uniform10 = select_joint(budget, cfg.nt, Some(&fb_u10))?.1.user_rates;
                let alloc = allocate_bits(budget, cfg.nt, TOTAL_BITS, &ALLOC_PAIRS)?;
                Ok((perfect, no_icic?, bs_bstar, bs6, uniform10, alloc.report.user_rates, alloc.pair))
            })
            .collect();
        let mut rates = ModeRates {
            perfect: vec![],
            no_icic: vec![],
            bs_bstar: vec![],
            bs6: vec![],
            uniform10: vec![],
            alloc: vec![],
            alloc_pairs: vec![],
        };
        for (p, n, bb, b6, u10, al, pair) in per? {
            rates.perfect.extend(p);
            rates.no_icic.extend(n);
            rates.bs_bstar.extend(bb);
            rates.bs6.extend(b6);
            rates.uniform10.extend(u10);
            rates.alloc.extend(al);
            rates.alloc_pairs.push(pair);
        }
        let avg = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let mut pair_counts: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for p in &rates.alloc_pairs {
            *pair_counts.entry(*p).or_default() += 1;
        }
        let modal = pair_counts.iter().max_by_key(|&(_, c)| *c).map(|(p, _)| *p).unwrap();
        table.push(vec![
            fmt(p0_db),
            bstar.to_string(),
            fmt(avg(&rates.perfect)),
            fmt(percentile(&rates.perfect, 5.0)),
            fmt(avg(&rates.no_icic)),
            fmt(percentile(&rates.no_icic, 5.0)),
            fmt(avg(&rates.bs_bstar)),
            fmt(percentile(&rates.bs_bstar, 5.0)),
            fmt(avg(&rates.bs6)),
            fmt(percentile(&rates.bs6, 5.0)),
            fmt(avg(&rates.uniform10)),
            fmt(percentile(&rates.uniform10, 5.0)),
            fmt(avg(&rates.alloc)),
            fmt(percentile(&rates.alloc, 5.0)),
            format!("{}+{}", modal.0, modal.1),
        ]);
    }
    Ok(table)
}
