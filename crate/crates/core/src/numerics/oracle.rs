//! Independent oracle for the ergodic-rate closed forms.
//!
//! Computes `E[log2(1 + X)]` by nested quadrature over the defining
//! densities, never touching `I1`/`I2`/`I3` or the incomplete-gamma
//! recurrences. `X` is one of:
//!
//! * `pure_gamma`:    `γ·Z`,                `Z ~ Gamma(M, 1)`
//! * `gamma_ratio_1`: `γ1·Z / (1 + γ2·Y)`,  `Y ~ Exp(1)`
//! * `gamma_ratio_2`: `α·Z / (1 + δ1·Y1 + δ2·Y2)`, `Y_i ~ Exp(1)`
//!
//! The interference weight `W = δ1·Y1 + δ2·Y2` has the hypoexponential
//! density `(e^{-w/δ1} - e^{-w/δ2})/(δ1 - δ2)` (or `w·e^{-w/δ}/δ²` when the
//! scales coincide), so both ratio kinds reduce to a one-dimensional outer
//! integral over an inner `pure_gamma` evaluation.

use super::gamma::ln_factorial;
use super::quadrature::{integrate_semi_infinite, QuadratureSpec};
use super::LOG2_E;
use crate::{Error, Result};

/// Distribution families understood by [`expected_log_oracle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityKind {
    /// params: `[gamma, M]`
    PureGamma,
    /// params: `[gamma1, gamma2, M]`
    GammaRatio1,
    /// params: `[alpha, delta1, delta2, M]`
    GammaRatio2,
}

/// `E[log2(1 + X)]` by direct numerical integration.
pub fn expected_log_oracle(kind: DensityKind, params: &[f64], spec: &QuadratureSpec) -> Result<f64> {
    match kind {
        DensityKind::PureGamma => {
            let [gamma, m] = take::<2>(params, kind)?;
            pure_gamma(gamma, shape(m)?, spec)
        }
        DensityKind::GammaRatio1 => {
            let [g1, g2, m] = take::<3>(params, kind)?;
            ratio_with_weight(g1, Weight::One { scale: g2 }, shape(m)?, spec)
        }
        DensityKind::GammaRatio2 => {
            let [alpha, d1, d2, m] = take::<4>(params, kind)?;
            ratio_with_weight(alpha, Weight::Two { s1: d1, s2: d2 }, shape(m)?, spec)
        }
    }
}

fn take<const N: usize>(params: &[f64], kind: DensityKind) -> Result<[f64; N]> {
    params
        .try_into()
        .map_err(|_| Error::Config(format!("{kind:?} expects {N} params, got {}", params.len())))
}

fn shape(m: f64) -> Result<u32> {
    if m < 1.0 || m.fract() != 0.0 || m > 64.0 {
        return Err(Error::domain(format!("shape M must be an integer in [1, 64], got {m}")));
    }
    Ok(m as u32)
}

fn pure_gamma(gamma: f64, m: u32, spec: &QuadratureSpec) -> Result<f64> {
    if gamma < 0.0 {
        return Err(Error::domain(format!("gamma must be >= 0, got {gamma}")));
    }
    if gamma < 1e-300 {
        return Ok(0.0);
    }
    let ln_norm = ln_factorial(m - 1);
    let f = move |z: f64| {
        if z <= 0.0 {
            return 0.0;
        }
        let ln_dens = (m as f64 - 1.0) * z.ln() - z - ln_norm;
        (1.0 + gamma * z).ln() * ln_dens.exp()
    };
    Ok(LOG2_E * integrate_semi_infinite(f, m as f64, spec)?)
}

enum Weight {
    One { scale: f64 },
    Two { s1: f64, s2: f64 },
}

fn ratio_with_weight(sig: f64, weight: Weight, m: u32, spec: &QuadratureSpec) -> Result<f64> {
    let (s1, s2) = match weight {
        Weight::One { scale } => (scale, 0.0),
        Weight::Two { s1, s2 } => (s1.max(s2), s1.min(s2)),
    };
    if s1 < 0.0 || s2 < 0.0 {
        return Err(Error::domain("interferer scales must be >= 0"));
    }
    if s1 < 1e-300 {
        return pure_gamma(sig, m, spec);
    }
    // Inner integrals run tighter so the outer tolerance is attainable.
    let inner = QuadratureSpec {
        abs_tol: spec.abs_tol,
        rel_tol: (spec.rel_tol * 1e-2).max(1e-14),
        max_subdivisions: spec.max_subdivisions,
    };
    let density = move |w: f64| -> f64 {
        if w <= 0.0 {
            return 0.0;
        }
        if s2 < 1e-300 {
            (-w / s1).exp() / s1
        } else if (s1 - s2).abs() <= 1e-9 * s1 {
            let s = 0.5 * (s1 + s2);
            w * (-w / s).exp() / (s * s)
        } else {
            ((-w / s1).exp() - (-w / s2).exp()) / (s1 - s2)
        }
    };
    let f = move |w: f64| {
        let d = density(w);
        if d == 0.0 {
            return 0.0;
        }
        d * pure_gamma(sig / (1.0 + w), m, &inner).unwrap_or(0.0)
    };
    integrate_semi_infinite(f, s1 + s2, spec)
}
