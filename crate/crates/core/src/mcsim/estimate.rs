//! Ergodic-rate estimation by trial-parallel Monte Carlo.

use rayon::prelude::*;

use super::beamform::{beam_power, beamformer_eigen, beamformer_zf};
use super::rng::substream;
use super::rvq::quantize_direction;
use super::ChannelRealization;
use crate::network::LinkBudget;
use crate::strategy::{FeedbackConfig, Strategy, StrategyProfile};
use crate::{Error, Result};

const TRIAL_TAG: u64 = 0x5452_4941;
const BLOCK: u64 = 8192;

/// A Monte Carlo mean with its confidence interval.
#[derive(Debug, Clone, Copy)]
pub struct McEstimate {
    pub mean: f64,
    /// `1.96 · sample_std / sqrt(trials)`.
    pub half_width_95: f64,
    pub sample_std: f64,
    pub trials: u64,
}

impl McEstimate {
    /// Half width at an arbitrary normal quantile (2.5758 for 99%).
    pub fn half_width(&self, z: f64) -> f64 {
        z * self.sample_std / (self.trials as f64).sqrt()
    }
}

/// Per-user ergodic rate estimates for one strategy profile.
///
/// Per trial, all channels are drawn, precoders are built from true CDI
/// (perfect CSI) or per-link quantized CDI (`fb` present), and
/// `log2(1 + SINR)` is accumulated per user. Deterministic for a fixed seed:
/// trial `t` always runs on substream `(seed, t)` and blocks reduce in fixed
/// order regardless of thread count.
pub fn mc_ergodic_rate(
    budget: &LinkBudget,
    profile: &StrategyProfile,
    fb: Option<&FeedbackConfig>,
    trials: u64,
    seed: u64,
) -> Result<Vec<McEstimate>> {
    let cells = budget.num_cells();
    let nt = budget.nt as usize;
    profile.check_feasible(cells, budget.nt)?;
    if let Some(cfg) = fb {
        cfg.check(cells)?;
    }
    if trials < 1 {
        return Err(Error::Config("trials must be >= 1".into()));
    }

    let blocks = trials.div_ceil(BLOCK);
    let partials: Vec<(Vec<f64>, Vec<f64>)> = (0..blocks)
        .into_par_iter()
        .map(|bi| {
            let lo = bi * BLOCK;
            let hi = (lo + BLOCK).min(trials);
            let mut sum = vec![0.0f64; cells];
            let mut sumsq = vec![0.0f64; cells];
            for t in lo..hi {
                let mut rng = substream(seed, TRIAL_TAG, t);
                let ch = ChannelRealization::draw(cells, nt, &mut rng);
                // Quantized CDI per (user, BS) link, drawn in fixed order.
                let quantized: Option<Vec<Vec<Vec<_>>>> = fb.map(|cfg| {
                    (0..cells)
                        .map(|i| {
                            (0..cells)
                                .map(|j| {
                                    quantize_direction(&ch.vectors[i][j], cfg.bits[i][j], &mut rng)
                                        .expect("nonzero channel")
                                })
                                .collect()
                        })
                        .collect()
                });
                let dir = |i: usize, j: usize| -> Vec<_> {
                    match &quantized {
                        Some(q) => q[i][j].clone(),
                        None => ch.vectors[i][j].clone(),
                    }
                };
                let precoders: Vec<Vec<_>> = (0..cells)
                    .map(|j| match &profile.strategies[j] {
                        Strategy::Beamform => {
                            if quantized.is_some() {
                                dir(j, j)
                            } else {
                                beamformer_eigen(&ch.vectors[j][j]).expect("nonzero channel")
                            }
                        }
                        Strategy::Cancel(victims) => {
                            let vs: Vec<Vec<_>> = victims.iter().map(|&k| dir(k, j)).collect();
                            beamformer_zf(&dir(j, j), &vs).expect("independent victim channels")
                        }
                    })
                    .collect();
                for i in 0..cells {
                    let sig = budget.received_snr[i][i] * beam_power(&precoders[i], &ch.vectors[i][i]);
                    let mut denom = 1.0;
                    for j in 0..cells {
                        if j != i {
                            denom += budget.received_snr[i][j]
                                * beam_power(&precoders[j], &ch.vectors[i][j]);
                        }
                    }
                    let v = (1.0 + sig / denom).log2();
                    sum[i] += v;
                    sumsq[i] += v * v;
                }
            }
            (sum, sumsq)
        })
        .collect();

    let mut sum = vec![0.0f64; cells];
    let mut sumsq = vec![0.0f64; cells];
    for (s, s2) in partials {
        for i in 0..cells {
            sum[i] += s[i];
            sumsq[i] += s2[i];
        }
    }
    let n = trials as f64;
    Ok((0..cells)
        .map(|i| {
            let mean = sum[i] / n;
            let var = (sumsq[i] / n - mean * mean).max(0.0) * n / (n - 1.0).max(1.0);
            let std = var.sqrt();
            McEstimate { mean, half_width_95: 1.96 * std / n.sqrt(), sample_std: std, trials }
        })
        .collect())
}

/// Samples of the received signal power `|f^* h_own|²` when the serving BS
/// nulls `n_victims` other users (0 = eigen-beamforming). Distributed as
/// Gamma(Nt - n_victims, 1) under the fading model.
pub fn sample_signal_power(nt: usize, n_victims: usize, trials: u64, seed: u64) -> Result<Vec<f64>> {
    if n_victims + 1 > nt {
        return Err(Error::Infeasible("n_victims must leave one degree of freedom".into()));
    }
    Ok((0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = substream(seed, 0x5349_4750, t);
            let own = super::rng::complex_gaussian_vector(nt, &mut rng);
            let victims: Vec<_> =
                (0..n_victims).map(|_| super::rng::complex_gaussian_vector(nt, &mut rng)).collect();
            let f = if victims.is_empty() {
                beamformer_eigen(&own).expect("nonzero")
            } else {
                beamformer_zf(&own, &victims).expect("independent")
            };
            beam_power(&f, &own)
        })
        .collect())
}

/// Samples of the interference power `|f^* h|²` for a precoder built
/// independently of `h` (unit exponential under the fading model).
pub fn sample_interference_power(nt: usize, trials: u64, seed: u64) -> Result<Vec<f64>> {
    if nt < 1 {
        return Err(Error::Config("nt must be >= 1".into()));
    }
    Ok((0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = substream(seed, 0x494e_5446, t);
            let own = super::rng::complex_gaussian_vector(nt, &mut rng);
            let other = super::rng::complex_gaussian_vector(nt, &mut rng);
            let f = beamformer_eigen(&own).expect("nonzero");
            beam_power(&f, &other)
        })
        .collect())
}
