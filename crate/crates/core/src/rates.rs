//! Closed-form ergodic achievable rates.
//!
//! `rate_bf` is the interference-free MISO rate with an `M`-fold diversity
//! signal; `rate_i2` and `rate_i3` add one and two exponentially distributed
//! interferers. `user_rate_2cell` / `user_rate_3cell` dispatch those forms
//! per strategy profile, and `user_rate_3cell_lfb` applies the limited
//! feedback penalties: signal SNR scaled by `ξ`, canceled interferers leaving
//! residual `κ·P^r`.

use crate::numerics::{
    expected_log_oracle, integral_i1, ln_beta, scaled_upper_gamma_neg, DensityKind,
    QuadratureSpec, LOG2_E,
};
use crate::strategy::{FeedbackConfig, Strategy, StrategyProfile};
use crate::network::LinkBudget;
use crate::{Error, Result};

/// Signal SNRs below this are treated as zero rate.
pub const SNR_FLOOR: f64 = 1e-12;

/// Interferer SNRs below this (linear) are dropped: the formulas divide by
/// the interferer power and lose all precision there, while the physical
/// effect is already below double precision.
pub const INTERFERER_FLOOR: f64 = 1e-10;

/// Relative `|δ1-δ2|` gap under which `rate_i3` switches to its coincident
/// -scale evaluation (the generic form divides by `δ1-δ2`).
const EQUAL_DELTA_REL_TOL: f64 = 1e-4;

/// Closed-form rate inputs: one signal term and up to two interferers.
#[derive(Debug, Clone)]
pub struct RateParams {
    /// Linear signal SNR (`γ`, `γ1`, or `α`).
    pub signal_snr: f64,
    /// Linear per-interferer SNRs (`γ2` or `δ1, δ2`); empty to two entries.
    pub interferer_snrs: Vec<f64>,
    /// Remaining beamforming degrees of freedom `M`.
    pub signal_dof: u32,
}

impl RateParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.signal_snr.is_finite() && self.signal_snr >= 0.0) {
            return Err(Error::domain(format!("signal snr must be finite >= 0, got {}", self.signal_snr)));
        }
        if self.signal_dof < 1 {
            return Err(Error::domain("signal_dof must be >= 1"));
        }
        if self.interferer_snrs.len() > 2 {
            return Err(Error::domain("at most two interferers supported"));
        }
        for &d in &self.interferer_snrs {
            if !(d.is_finite() && d >= 0.0) {
                return Err(Error::domain(format!("interferer snr must be finite >= 0, got {d}")));
            }
        }
        Ok(())
    }

    /// Dispatch to [`rate_bf`], [`rate_i2`] or [`rate_i3`] by interferer count.
    pub fn rate(&self) -> Result<f64> {
        self.validate()?;
        let mut itf = self.interferer_snrs.clone();
        itf.retain(|&d| d > INTERFERER_FLOOR);
        match itf.len() {
            0 => rate_bf(self.signal_snr, self.signal_dof),
            1 => rate_i2(self.signal_snr, itf[0], self.signal_dof),
            _ => rate_i3(self.signal_snr, itf[0], itf[1], self.signal_dof),
        }
    }
}

fn check_signal(snr: f64, m: u32) -> Result<Option<f64>> {
    if !(snr.is_finite() && snr >= 0.0) {
        return Err(Error::domain(format!("snr must be finite >= 0, got {snr}")));
    }
    if m < 1 {
        return Err(Error::domain("M must be >= 1"));
    }
    if snr < SNR_FLOOR {
        return Ok(Some(0.0));
    }
    Ok(None)
}

/// `E[log2(1 + γ·Z)]`, `Z ~ Gamma(M, 1)`:
/// `log2(e)·e^{1/γ}·Σ_{k=0}^{M-1} Γ(-k, 1/γ)/γ^k` evaluated in scaled form.
pub fn rate_bf(snr: f64, m: u32) -> Result<f64> {
    if let Some(v) = check_signal(snr, m)? {
        return Ok(v);
    }
    let x = 1.0 / snr;
    let terms = scaled_upper_gamma_neg(x, m as usize)?;
    Ok(LOG2_E * terms.iter().sum::<f64>())
}

/// `E[log2(1 + γ1·Z/(1 + γ2·Y))]`, `Z ~ Gamma(M, 1)`, `Y ~ Exp(1)`.
pub fn rate_i2(signal: f64, interferer: f64, m: u32) -> Result<f64> {
    if let Some(v) = check_signal(signal, m)? {
        return Ok(v);
    }
    if !(interferer.is_finite() && interferer >= 0.0) {
        return Err(Error::domain(format!("interferer snr must be finite >= 0, got {interferer}")));
    }
    if interferer <= INTERFERER_FLOOR {
        return rate_bf(signal, m);
    }
    let a = 1.0 / signal;
    let b = signal / interferer;
    let mut sum = 0.0;
    for i in 0..m {
        let mut inv_fact = 1.0; // 1/(i-l)! marching up in l
        for l in (0..=i).rev() {
            let coeff = signal.powi(l as i32 + 1 - i as i32) / interferer * inv_fact;
            sum += coeff * integral_i1(a, b, i, l + 1)?;
            inv_fact /= (i - l + 1) as f64;
        }
    }
    Ok(LOG2_E * sum)
}

/// `E[log2(1 + α·Z/(1 + δ1·Y1 + δ2·Y2))]`, `Z ~ Gamma(M, 1)`, `Y_i ~ Exp(1)`.
///
/// The generic expansion divides by `δ1 - δ2`; when the interferer powers
/// nearly coincide it evaluates the exact analytic limit at the midpoint
/// (`∂I1/∂b = -n·I1(a,b,m,n+1)`), which the difference quotient converges to.
pub fn rate_i3(signal: f64, delta1: f64, delta2: f64, m: u32) -> Result<f64> {
    if let Some(v) = check_signal(signal, m)? {
        return Ok(v);
    }
    for &d in &[delta1, delta2] {
        if !(d.is_finite() && d >= 0.0) {
            return Err(Error::domain(format!("interferer snr must be finite >= 0, got {d}")));
        }
    }
    if delta2 <= INTERFERER_FLOOR {
        return rate_i2(signal, delta1, m);
    }
    if delta1 <= INTERFERER_FLOOR {
        return rate_i2(signal, delta2, m);
    }
    let a = 1.0 / signal;
    if (delta1 - delta2).abs() <= EQUAL_DELTA_REL_TOL * delta1.max(delta2) {
        let d = 0.5 * (delta1 + delta2);
        let b = signal / d;
        let mut sum = 0.0;
        for i in 0..m {
            let mut inv_fact = 1.0;
            for l in (0..=i).rev() {
                let coeff = signal.powi(l as i32 - i as i32 + 1) * inv_fact;
                let deriv = signal * (l + 1) as f64 / (d * d) * integral_i1(a, b, i, l + 2)?;
                sum += coeff * deriv;
                inv_fact /= (i - l + 1) as f64;
            }
        }
        return Ok(LOG2_E * sum);
    }
    let b1 = signal / delta1;
    let b2 = signal / delta2;
    let mut sum = 0.0;
    for i in 0..m {
        let mut inv_fact = 1.0;
        for l in (0..=i).rev() {
            let coeff = signal.powi(l as i32 - i as i32 + 1) / (delta1 - delta2) * inv_fact;
            sum += coeff * (integral_i1(a, b1, i, l + 1)? - integral_i1(a, b2, i, l + 1)?);
            inv_fact /= (i - l + 1) as f64;
        }
    }
    Ok(LOG2_E * sum)
}

/// Mean squared quantization alignment `ξ = 1 - L·β(L, Nt/(Nt-1))`, `L = 2^bits`.
///
/// Evaluated through log-gamma so large codebooks do not overflow.
pub fn quantization_xi(bits: u32, nt: u32) -> Result<f64> {
    if nt < 2 {
        return Err(Error::domain("quantization_xi requires nt >= 2"));
    }
    let ln_l = bits as f64 * std::f64::consts::LN_2;
    let l = (bits as f64).exp2();
    let y = nt as f64 / (nt as f64 - 1.0);
    let v = 1.0 - (ln_l + ln_beta(l, y)).exp();
    Ok(v.clamp(0.0, 1.0))
}

/// Mean residual interference after ZF on quantized CDI:
/// `κ = 2^{-bits/(Nt-1)}` exactly.
pub fn residual_kappa(bits: u32, nt: u32) -> Result<f64> {
    if nt < 2 {
        return Err(Error::domain("residual_kappa requires nt >= 2"));
    }
    Ok((-(bits as f64) / (nt as f64 - 1.0)).exp2())
}

/// Signal alignment and residual-interference factors for one user.
#[derive(Debug, Clone, Copy)]
pub struct FeedbackFactors {
    /// Mean squared alignment of the home-link CDI, in `(0, 1]`.
    pub xi: f64,
    /// Mean residual interference factor of a canceled link, in `(0, 1]`.
    pub kappa: f64,
}

impl FeedbackFactors {
    /// Perfect-CSI factors: `ξ = 1` and no residual.
    pub fn perfect() -> Self {
        Self { xi: 1.0, kappa: 0.0 }
    }
}

/// Effective (signal, interferer) SNRs seen by `user` under `profile`.
///
/// `factors(j)` returns `(ξ, κ)` for the link from BS `j`; `ξ` is only used
/// for the home link and `κ` only for canceling neighbors.
fn effective_links(
    profile: &StrategyProfile,
    budget: &LinkBudget,
    user: usize,
    factors: &dyn Fn(usize) -> Result<FeedbackFactors>,
) -> Result<(f64, Vec<f64>, u32)> {
    profile.check_feasible(budget.num_cells(), budget.nt)?;
    let n = budget.num_cells();
    if user >= n {
        return Err(Error::Config(format!("user index {user} out of range for {n} cells")));
    }
    let m = match &profile.strategies[user] {
        Strategy::Beamform => budget.nt,
        Strategy::Cancel(victims) => budget.nt - victims.len() as u32,
    };
    let signal = factors(user)?.xi * budget.received_snr[user][user];
    let mut interferers = Vec::with_capacity(n - 1);
    for j in 0..n {
        if j == user {
            continue;
        }
        let p = budget.received_snr[user][j];
        match &profile.strategies[j] {
            Strategy::Cancel(victims) if victims.contains(&user) => {
                interferers.push(factors(j)?.kappa * p);
            }
            _ => interferers.push(p),
        }
    }
    Ok((signal, interferers, m))
}

fn dispatch_rate(signal: f64, interferers: &[f64], m: u32) -> Result<f64> {
    let mut itf: Vec<f64> = interferers.iter().copied().filter(|&d| d > INTERFERER_FLOOR).collect();
    itf.sort_by(f64::total_cmp);
    match itf.len() {
        0 => rate_bf(signal, m),
        1 => rate_i2(signal, itf[0], m),
        2 => rate_i3(signal, itf[0], itf[1], m),
        _ => Err(Error::Config("more than two interferers".into())),
    }
}

/// Ergodic rate of `user` in a 2-cell network with perfect CSI.
pub fn user_rate_2cell(profile: &StrategyProfile, budget: &LinkBudget, user: usize) -> Result<f64> {
    if budget.num_cells() != 2 || profile.strategies.len() != 2 {
        return Err(Error::Config("user_rate_2cell requires a 2-cell profile and budget".into()));
    }
    let perfect = |_: usize| Ok(FeedbackFactors::perfect());
    let (signal, interferers, m) = effective_links(profile, budget, user, &perfect)?;
    dispatch_rate(signal, &interferers, m)
}

/// Ergodic rate of `user` in a 3-cell network with perfect CSI.
pub fn user_rate_3cell(profile: &StrategyProfile, budget: &LinkBudget, user: usize) -> Result<f64> {
    if budget.num_cells() != 3 || profile.strategies.len() != 3 {
        return Err(Error::Config("user_rate_3cell requires a 3-cell profile and budget".into()));
    }
    let perfect = |_: usize| Ok(FeedbackFactors::perfect());
    let (signal, interferers, m) = effective_links(profile, budget, user, &perfect)?;
    dispatch_rate(signal, &interferers, m)
}

/// Ergodic rate of `user` under limited feedback (works for 2- and 3-cell
/// budgets; the 2-cell case simply has one interferer slot).
pub fn user_rate_3cell_lfb(
    profile: &StrategyProfile,
    budget: &LinkBudget,
    fb: &FeedbackConfig,
    user: usize,
) -> Result<f64> {
    fb.check(budget.num_cells())?;
    let nt = budget.nt;
    let factors = |j: usize| -> Result<FeedbackFactors> {
        Ok(FeedbackFactors {
            xi: quantization_xi(fb.bits[user][user], nt)?,
            kappa: residual_kappa(fb.bits[user][j], nt)?,
        })
    };
    let (signal, interferers, m) = effective_links(profile, budget, user, &factors)?;
    dispatch_rate(signal, &interferers, m)
}

/// Rate for arbitrary per-link feedback factors (or perfect CSI with `None`).
pub fn user_rate(
    profile: &StrategyProfile,
    budget: &LinkBudget,
    fb: Option<&FeedbackConfig>,
    user: usize,
) -> Result<f64> {
    match fb {
        None => {
            let perfect = |_: usize| Ok(FeedbackFactors::perfect());
            let (signal, interferers, m) = effective_links(profile, budget, user, &perfect)?;
            dispatch_rate(signal, &interferers, m)
        }
        Some(cfg) => user_rate_3cell_lfb(profile, budget, cfg, user),
    }
}

/// Oracle agreement helper used by tests and the validation CLI: the
/// quadrature value for the same parameters as [`RateParams::rate`].
pub fn oracle_rate(params: &RateParams, spec: &QuadratureSpec) -> Result<f64> {
    params.validate()?;
    let m = params.signal_dof as f64;
    let mut itf = params.interferer_snrs.clone();
    itf.retain(|&d| d > INTERFERER_FLOOR);
    match itf.len() {
        0 => expected_log_oracle(DensityKind::PureGamma, &[params.signal_snr, m], spec),
        1 => expected_log_oracle(DensityKind::GammaRatio1, &[params.signal_snr, itf[0], m], spec),
        _ => expected_log_oracle(
            DensityKind::GammaRatio2,
            &[params.signal_snr, itf[0], itf[1], m],
            spec,
        ),
    }
}
