//! The `I1`/`I2`/`I3` integral family:
//!
//! ```text
//! I3(a,b,m)   = ∫_b^∞ x^m e^{-ax} dx
//! I2(a,b,m,n) = ∫_0^∞ x^m e^{-ax} / (x+b)^n dx
//! I1(a,b,m,n) = ∫_0^∞ x^m e^{-ax} / ((x+b)^n (x+1)) dx
//! ```
//!
//! `I3` reduces to scaled exponential integrals and is evaluated stably for
//! any argument. `I2` and `I1` have exact finite expansions over `I3`
//! (binomial and partial-fraction respectively) whose alternating terms
//! cancel catastrophically for large `b` or `b ≈ 1`; both expansions monitor
//! their own cancellation (largest term vs. result) and fall back to adaptive
//! quadrature when more than half the significant digits would be lost. The
//! route taken is reported so callers and tests can observe it.

use super::e1::expint_en_scaled;
use super::quadrature::{integrate_semi_infinite, QuadratureSpec};
use crate::{Error, Result};

/// Which evaluation path produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalRoute {
    ClosedForm,
    Quadrature,
}

/// A value plus the route that produced it.
#[derive(Debug, Clone, Copy)]
pub struct IntegralEval {
    pub value: f64,
    pub route: EvalRoute,
}

/// Condition bound (largest term over result, compounded through nested
/// expansions) above which the closed forms hand over to quadrature. At
/// 1e6 the closed route keeps ~1e-10 relative accuracy.
const COND_LIMIT: f64 = 1e6;

fn fallback_spec() -> QuadratureSpec {
    QuadratureSpec { abs_tol: 1e-300, rel_tol: 1e-11, max_subdivisions: 4000 }
}

fn check_i3_args(a: f64, b: f64, m: i32) -> Result<()> {
    if !(a > 0.0) {
        return Err(Error::domain(format!("I3 requires a > 0, got {a}")));
    }
    if !(b >= 0.0) {
        return Err(Error::domain(format!("I3 requires b >= 0, got {b}")));
    }
    if m <= -1 && b == 0.0 {
        return Err(Error::domain("I3 with m <= -1 requires b > 0 (singular at 0)"));
    }
    Ok(())
}

/// `e^{ab} · I3(a, b, m)`, finite for the whole parameter range.
pub fn integral_i3_scaled(a: f64, b: f64, m: i32) -> Result<f64> {
    check_i3_args(a, b, m)?;
    if m >= 0 {
        // e^{ab}·I3 = Σ_{i=0}^m (m!/i!) b^i / a^{m-i+1}; all terms positive.
        let mut coeff = 1.0; // m!/i! marching down from i = m
        let mut sum = 0.0;
        for i in (0..=m).rev() {
            sum += coeff * b.powi(i) / a.powi(m - i + 1);
            coeff *= i as f64;
        }
        Ok(sum)
    } else {
        // I3 = E_n(ab)/b^{n-1} with n = -m.
        let n = (-m) as u32;
        Ok(expint_en_scaled(n, a * b)? / b.powi(-m - 1))
    }
}

/// `I3(a, b, m) = ∫_b^∞ x^m e^{-ax} dx`.
///
/// Underflows to 0 when `ab` is so large that `e^{-ab}` is subnormal; use
/// [`integral_i3_scaled`] in that regime.
pub fn integral_i3(a: f64, b: f64, m: i32) -> Result<f64> {
    Ok(integral_i3_scaled(a, b, m)? * (-a * b).exp())
}

/// Closed-form `I2` with its condition number (largest term over result);
/// `None` when the expansion is not finite.
fn i2_closed(a: f64, b: f64, m: u32, n: u32) -> Result<Option<(f64, f64)>> {
    // Binomial expansion of x^m = ((x+b) - b)^m over scaled I3.
    let mut sum = 0.0f64;
    let mut max_term = 0.0f64;
    let mut binom = 1.0f64; // C(m, i)
    for i in 0..=m {
        let term = binom
            * neg_pow(b, (m - i) as i32)
            * integral_i3_scaled(a, b, i as i32 - n as i32)?;
        sum += term;
        max_term = max_term.max(term.abs());
        binom *= (m - i) as f64 / (i + 1) as f64;
    }
    if !sum.is_finite() || sum == 0.0 {
        return Ok(None);
    }
    Ok(Some((sum, max_term / sum.abs())))
}

fn i2_quadrature(a: f64, b: f64, m: u32, n: u32) -> Result<f64> {
    let scale = (m as f64 + 1.0) / a;
    integrate_semi_infinite(
        |x| x.powi(m as i32) * (-a * x).exp() / (x + b).powi(n as i32),
        scale,
        &fallback_spec(),
    )
}

/// `I2(a, b, m, n) = ∫_0^∞ x^m e^{-ax}/(x+b)^n dx` with route metadata.
pub fn integral_i2_eval(a: f64, b: f64, m: u32, n: u32) -> Result<IntegralEval> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::domain(format!("I2 requires a > 0 and b > 0, got a={a}, b={b}")));
    }
    if let Some((value, cond)) = i2_closed(a, b, m, n)? {
        if cond <= COND_LIMIT {
            return Ok(IntegralEval { value, route: EvalRoute::ClosedForm });
        }
    }
    Ok(IntegralEval { value: i2_quadrature(a, b, m, n)?, route: EvalRoute::Quadrature })
}

/// `I2(a, b, m, n)`; see [`integral_i2_eval`].
pub fn integral_i2(a: f64, b: f64, m: u32, n: u32) -> Result<f64> {
    Ok(integral_i2_eval(a, b, m, n)?.value)
}

/// `I1(a, b, m, n) = ∫_0^∞ x^m e^{-ax}/((x+b)^n (x+1)) dx` with route metadata.
///
/// For `b = 1` the integrand collapses to `x^m e^{-ax}/(x+1)^{n+1}` and the
/// partial-fraction expansion (which divides by `(1-b)^i`) does not apply;
/// that case is evaluated exactly as `I2(a, 1, m, n+1)`.
pub fn integral_i1_eval(a: f64, b: f64, m: u32, n: u32) -> Result<IntegralEval> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::domain(format!("I1 requires a > 0 and b > 0, got a={a}, b={b}")));
    }
    if b == 1.0 {
        return integral_i2_eval(a, 1.0, m, n + 1);
    }
    // Partial fractions: Σ_{i=1}^n (-1)^{i-1}/(1-b)^i · I2(a,b,m,n-i+1)
    //                    + I2(a,1,m,1)/(b-1)^n
    // Each term inherits the condition of its inner I2, so the compounded
    // condition Σ |term_i|·cond_i / |sum| gates the fallback.
    let closed = (|| -> Result<Option<(f64, f64)>> {
        let mut sum = 0.0f64;
        let mut err_mass = 0.0f64; // Σ |term|·cond
        let mut sign = 1.0f64;
        for i in 1..=n {
            let Some((inner, cond)) = i2_closed(a, b, m, n - i + 1)? else {
                return Ok(None);
            };
            let term = sign / (1.0 - b).powi(i as i32) * inner;
            sum += term;
            err_mass += term.abs() * cond;
            sign = -sign;
        }
        let Some((inner, cond)) = i2_closed(a, 1.0, m, 1)? else {
            return Ok(None);
        };
        let last = inner / (b - 1.0).powi(n as i32);
        sum += last;
        err_mass += last.abs() * cond;
        if !sum.is_finite() || sum == 0.0 {
            return Ok(None);
        }
        Ok(Some((sum, err_mass / sum.abs())))
    })()?;
    if let Some((value, cond)) = closed {
        if cond <= COND_LIMIT {
            return Ok(IntegralEval { value, route: EvalRoute::ClosedForm });
        }
    }
    let scale = (m as f64 + 1.0) / a;
    let value = integrate_semi_infinite(
        |x| x.powi(m as i32) * (-a * x).exp() / ((x + b).powi(n as i32) * (x + 1.0)),
        scale,
        &fallback_spec(),
    )?;
    Ok(IntegralEval { value, route: EvalRoute::Quadrature })
}

/// `I1(a, b, m, n)`; see [`integral_i1_eval`].
pub fn integral_i1(a: f64, b: f64, m: u32, n: u32) -> Result<f64> {
    Ok(integral_i1_eval(a, b, m, n)?.value)
}

/// `(-b)^k` without libm round-trips.
fn neg_pow(b: f64, k: i32) -> f64 {
    let v = b.powi(k);
    if k % 2 == 0 {
        v
    } else {
        -v
    }
}
