//! Strategy selection, CSI-cost accounting, and feedback-bit design.
//!
//! Joint selection exhaustively maximizes the sum rate over the strategy
//! profiles (4 in a 2-cell network; 27 in a 3-cell network, where each BS
//! chooses among beamforming, canceling toward its nearest victim, or
//! canceling toward both neighbors). Distributed selection is a single-pass
//! heuristic where each BS optimizes its own strategy assuming everyone else
//! beamforms.

use std::collections::BTreeSet;

use crate::network::LinkBudget;
use crate::rates::user_rate;
use crate::strategy::{FeedbackConfig, SelectionMode, Strategy, StrategyProfile};
use crate::{Error, Result};

/// Rates and CSI cost of a selected profile.
#[derive(Debug, Clone)]
pub struct RateReport {
    pub user_rates: Vec<f64>,
    pub sum_rate: f64,
    pub csi_cost: u32,
}

/// The neighbor whose user receives the most power from BS `bs` (the one
/// suffering the highest average interference from it); ties break to the
/// lower cell index.
pub fn nearest_victim(budget: &LinkBudget, bs: usize) -> usize {
    let n = budget.num_cells();
    let mut best = usize::MAX;
    let mut best_p = f64::NEG_INFINITY;
    for k in 0..n {
        if k == bs {
            continue;
        }
        let p = budget.received_snr[k][bs];
        if p > best_p {
            best_p = p;
            best = k;
        }
    }
    best
}

/// Candidate strategies of one BS: the full set `{BF, IC}` in a 2-cell
/// network, the reduced set `{BF, IC(nearest), IC(both)}` in a 3-cell one.
/// Strategies infeasible for `nt` are dropped.
pub fn candidate_strategies(budget: &LinkBudget, bs: usize, nt: u32) -> Vec<Strategy> {
    let n = budget.num_cells();
    let mut out = vec![Strategy::Beamform];
    if n == 2 {
        if nt >= 2 {
            out.push(Strategy::cancel_one(1 - bs));
        }
    } else {
        if nt >= 2 {
            out.push(Strategy::cancel_one(nearest_victim(budget, bs)));
        }
        if nt >= 3 {
            out.push(Strategy::Cancel((0..n).filter(|&k| k != bs).collect::<BTreeSet<_>>()));
        }
    }
    out
}

/// Every feasible profile from the per-BS candidate sets, in lexicographic
/// candidate order.
pub fn enumerate_profiles(budget: &LinkBudget, nt: u32) -> Vec<StrategyProfile> {
    let n = budget.num_cells();
    let per_bs: Vec<Vec<Strategy>> = (0..n).map(|j| candidate_strategies(budget, j, nt)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        out.push(StrategyProfile::new(
            idx.iter().enumerate().map(|(j, &k)| per_bs[j][k].clone()).collect(),
        ));
        // odometer increment
        let mut pos = n;
        while pos > 0 {
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < per_bs[pos].len() {
                break;
            }
            idx[pos] = 0;
            if pos == 0 {
                return out;
            }
        }
    }
}

/// Number of channel directions the network must learn for `profile`: one
/// home direction per user plus one per (victim, helper) pair.
pub fn csi_cost(profile: &StrategyProfile) -> u32 {
    (profile.strategies.len() + profile.total_victims()) as u32
}

fn evaluate(
    budget: &LinkBudget,
    profile: &StrategyProfile,
    fb: Option<&FeedbackConfig>,
) -> Result<RateReport> {
    let n = budget.num_cells();
    let mut user_rates = Vec::with_capacity(n);
    for u in 0..n {
        user_rates.push(user_rate(profile, budget, fb, u)?);
    }
    let sum_rate = user_rates.iter().sum();
    Ok(RateReport { user_rates, sum_rate, csi_cost: csi_cost(profile) })
}

/// Exhaustive joint selection: the profile maximizing the sum rate, under
/// perfect CSI (`fb = None`) or the limited-feedback approximation.
/// Ties break toward fewer cancellation constraints (lower CSI cost), then
/// lexicographic enumeration order.
pub fn select_joint(
    budget: &LinkBudget,
    nt: u32,
    fb: Option<&FeedbackConfig>,
) -> Result<(StrategyProfile, RateReport)> {
    let mut best: Option<(StrategyProfile, RateReport, usize)> = None;
    for (rank, profile) in enumerate_profiles(budget, nt).into_iter().enumerate() {
        let report = evaluate(budget, &profile, fb)?;
        let better = match &best {
            None => true,
            Some((bp, br, brank)) => {
                report.sum_rate > br.sum_rate
                    || (report.sum_rate == br.sum_rate
                        && (profile.total_victims() < bp.total_victims()
                            || (profile.total_victims() == bp.total_victims() && rank < *brank)))
            }
        };
        if better {
            best = Some((profile, report, rank));
        }
    }
    let (profile, report, _) = best.ok_or_else(|| Error::Infeasible("no feasible profile".into()))?;
    Ok((profile, report))
}

/// Single-pass distributed selection: each BS picks the strategy that would
/// maximize the cluster sum rate if every other BS beamformed, with
/// out-of-cluster interference treated as a noise-floor inflation.
pub fn select_distributed(
    budget: &LinkBudget,
    nt: u32,
    outer_noise_floor: f64,
) -> Result<StrategyProfile> {
    if outer_noise_floor < 0.0 {
        return Err(Error::Config("noise floor must be >= 0".into()));
    }
    let eff = budget.with_noise_floor(outer_noise_floor);
    let n = eff.num_cells();
    let mut chosen = Vec::with_capacity(n);
    for j in 0..n {
        let mut best: Option<(Strategy, f64)> = None;
        for cand in candidate_strategies(&eff, j, nt) {
            let mut strategies = vec![Strategy::Beamform; n];
            strategies[j] = cand.clone();
            let profile = StrategyProfile::new(strategies);
            let report = evaluate(&eff, &profile, None)?;
            let better = match &best {
                None => true,
                Some((bs, bv)) => {
                    report.sum_rate > *bv
                        || (report.sum_rate == *bv && cand.victims() < bs.victims())
                }
            };
            if better {
                best = Some((cand, report.sum_rate));
            }
        }
        chosen.push(best.expect("candidate set is never empty").0);
    }
    let mut profile = StrategyProfile::new(chosen);
    profile.mode = SelectionMode::Distributed;
    Ok(profile)
}

/// Feedback bits required of each helper link to keep the rate loss under
/// `log2(delta_r)` bps/Hz: `ceil((Nt-1)·log2(2·P0/(δ_R-1)))`, clamped at 0.
pub fn bstar_bits(p0_linear: f64, nt: u32, delta_r: f64) -> Result<u32> {
    if !(p0_linear > 0.0) {
        return Err(Error::domain("P0 must be positive"));
    }
    if nt < 2 {
        return Err(Error::domain("bstar_bits requires nt >= 2"));
    }
    if !(delta_r > 1.0) {
        return Err(Error::domain(format!("delta_r must exceed 1 (got {delta_r})")));
    }
    let raw = (nt as f64 - 1.0) * (2.0 * p0_linear / (delta_r - 1.0)).log2();
    Ok(raw.ceil().max(0.0) as u32)
}

/// Outcome of a feedback-bit allocation search.
#[derive(Debug, Clone)]
pub struct BitAllocation {
    pub pair: (u32, u32),
    pub profile: StrategyProfile,
    pub report: RateReport,
}

/// Exhaustive search over `(B_s, B_I)` pairs (each must satisfy
/// `B_s + 2·B_I = total_bits`) and strategy profiles, maximizing the
/// limited-feedback sum rate. Ties break toward the larger `B_s` (cheaper
/// helper CSI).
pub fn allocate_bits(
    budget: &LinkBudget,
    nt: u32,
    total_bits: u32,
    allowed_pairs: &[(u32, u32)],
) -> Result<BitAllocation> {
    if allowed_pairs.is_empty() {
        return Err(Error::Config("allocate_bits needs a nonempty pair list".into()));
    }
    for &(bs, bi) in allowed_pairs {
        if bs + 2 * bi != total_bits {
            return Err(Error::Config(format!(
                "pair ({bs}, {bi}) violates B_s + 2·B_I = {total_bits}"
            )));
        }
    }
    let mut best: Option<BitAllocation> = None;
    for &(bs, bi) in allowed_pairs {
        let fb = FeedbackConfig::home_helper(budget.num_cells(), bs, bi);
        let (profile, report) = select_joint(budget, nt, Some(&fb))?;
        let better = match &best {
            None => true,
            Some(cur) => {
                report.sum_rate > cur.report.sum_rate
                    || (report.sum_rate == cur.report.sum_rate && bs > cur.pair.0)
            }
        };
        if better {
            best = Some(BitAllocation { pair: (bs, bi), profile, report });
        }
    }
    Ok(best.expect("nonempty pair list"))
}
