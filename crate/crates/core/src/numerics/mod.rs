//! Special functions and the integral family the closed-form rates reduce to.
//!
//! Everything here comes in two flavors: closed forms (exponential-integral
//! recurrences, finite sums) and an independent adaptive Gauss-Kronrod
//! quadrature route. The closed forms are exact in real arithmetic but some
//! are ill-conditioned in floating point (alternating sums, partial fractions
//! near coincident poles); those detect the cancellation and fall back to
//! quadrature, reporting the route taken.

mod e1;
mod gamma;
mod integrals;
mod oracle;
mod quadrature;

pub use e1::{exp_integral_e1, exp_integral_e1_scaled, expint_en_scaled};
pub use gamma::{erlang_cdf, ln_beta, ln_factorial, ln_gamma, scaled_upper_gamma_neg};
pub use integrals::{
    integral_i1, integral_i1_eval, integral_i2, integral_i2_eval, integral_i3,
    integral_i3_scaled, EvalRoute, IntegralEval,
};
pub use oracle::{expected_log_oracle, DensityKind};
pub use quadrature::{integrate, integrate_semi_infinite, QuadratureSpec};

pub(crate) const LOG2_E: f64 = std::f64::consts::LOG2_E;
