//! Exponential integrals `E1` and `E_n`, plain and scaled by `e^x`.
//!
//! The scaled forms are the workhorses: the closed-form rate expressions all
//! multiply `E_n(ab)` by `e^{ab}`, which overflows long before the product
//! stops being perfectly representable.

use crate::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const MAX_ITER: usize = 400;

/// `E1(x) = ∫_x^∞ e^{-t}/t dt` for `x > 0`.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    Ok(exp_integral_e1_scaled(x)? * (-x).exp())
}

/// `e^x · E1(x)`, finite for all `x > 0`.
pub fn exp_integral_e1_scaled(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("E1 requires x > 0, got {x}")));
    }
    if x <= 1.0 {
        // e^x (-γ - ln x + Σ (-1)^{k+1} x^k / (k·k!))
        let mut sum = -EULER_GAMMA - x.ln();
        let mut term = 1.0;
        for k in 1..=MAX_ITER {
            term *= -x / k as f64;
            let contrib = -term / k as f64;
            sum += contrib;
            if contrib.abs() < 1e-17 * sum.abs().max(1.0) {
                break;
            }
        }
        Ok(sum * x.exp())
    } else {
        // Even-form continued fraction: e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- 9/(...))))
        Ok(lentz(|k| {
            if k == 0 {
                (0.0, x + 1.0)
            } else {
                let kf = k as f64;
                (-kf * kf, x + 2.0 * kf + 1.0)
            }
        }))
    }
}

/// `e^x · E_n(x)` where `E_n(x) = ∫_1^∞ e^{-xt}/t^n dt`, for `n ≥ 1`, `x > 0`.
///
/// `E_1` is `E1`; higher orders show up in the `I3` integral with negative
/// polynomial order. Small `x` uses the upward recurrence
/// `E_{n+1}(x) = (e^{-x} - x·E_n(x))/n`; large `x` the standard continued
/// fraction, which is well behaved there.
pub fn expint_en_scaled(n: u32, x: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("E_n requires n >= 1"));
    }
    if !(x > 0.0) {
        return Err(Error::domain(format!("E_n requires x > 0, got {x}")));
    }
    if n == 1 {
        return exp_integral_e1_scaled(x);
    }
    if x <= 1.5 {
        let mut s = exp_integral_e1_scaled(x)?;
        for m in 1..n {
            s = (1.0 - x * s) / m as f64;
        }
        Ok(s)
    } else {
        // e^x E_n(x) = 1/(x+n- 1·n/(x+n+2- 2(n+1)/(x+n+4- ...)))
        let nf = n as f64;
        Ok(lentz(|k| {
            if k == 0 {
                (0.0, x + nf)
            } else {
                let kf = k as f64;
                (-kf * (nf + kf - 1.0), x + nf + 2.0 * kf)
            }
        }))
    }
}

/// Modified Lentz evaluation of `1/(b0 + a1/(b1 + a2/(b2 + ...)))` where
/// `coeffs(k)` yields `(a_k, b_k)` and `a_0` is ignored.
fn lentz(coeffs: impl Fn(usize) -> (f64, f64)) -> f64 {
    const TINY: f64 = 1e-300;
    let (_, b0) = coeffs(0);
    let mut f = if b0 == 0.0 { TINY } else { b0 };
    let mut c = f;
    let mut d = 0.0;
    for k in 1..MAX_ITER {
        let (a, b) = coeffs(k);
        d = b + a * d;
        if d == 0.0 {
            d = TINY;
        }
        c = b + a / c;
        if c == 0.0 {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    1.0 / f
}
