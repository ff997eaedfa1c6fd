//! `icic validate` — runs the oracle suites: closed forms against quadrature,
//! Monte Carlo against closed forms, precoder-power distribution checks, and
//! RVQ quantization statistics. Exits nonzero if any check fails.

use anyhow::Result;
use icic_core::checks::ks_statistic;
use icic_core::coordinator::{bstar_bits, enumerate_profiles};
use icic_core::mcsim::{
    mc_ergodic_rate, residual_leakage_mean, sample_interference_power, sample_signal_power,
    substream,
};
use icic_core::network::two_cell_axis_scenario;
use icic_core::numerics::{
    erlang_cdf, expected_log_oracle, integral_i1, integral_i2, integrate_semi_infinite,
    DensityKind, QuadratureSpec,
};
use icic_core::rates::{quantization_xi, rate_bf, rate_i2, rate_i3, residual_kappa, user_rate};
use rand::Rng;

pub struct ValidateOptions {
    pub quick: bool,
    pub seed: u64,
}

struct Suite {
    failures: u32,
}

impl Suite {
    fn check(&mut self, name: &str, pass: bool, detail: &str) {
        println!("[{}] {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            self.failures += 1;
        }
    }
}

fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    (lo.ln() + rng.random::<f64>() * (hi.ln() - lo.ln())).exp()
}

pub fn run(opts: &ValidateOptions) -> Result<bool> {
    let mut suite = Suite { failures: 0 };
    let spec = QuadratureSpec { abs_tol: 1e-300, rel_tol: 1e-10, max_subdivisions: 4000 };
    let sets = if opts.quick { 40 } else { 200 };
    let mut rng = substream(opts.seed, 0x56_414c, 0);

    // 1. Closed-form integrals vs the adaptive-quadrature oracle.
    let mut worst = 0.0f64;
    for _ in 0..sets {
        let a = log_uniform(&mut rng, 0.01, 100.0);
        let b = log_uniform(&mut rng, 0.01, 100.0);
        let m = rng.random_range(0..=8u32);
        let n = rng.random_range(0..=8u32);
        let i2 = integral_i2(a, b, m, n)?;
        let q2 = integrate_semi_infinite(
            |x| x.powi(m as i32) * (-a * x).exp() / (x + b).powi(n as i32),
            (m as f64 + 1.0) / a,
            &spec,
        )?;
        worst = worst.max((i2 - q2).abs() / q2.abs().max(1e-300));
        let i1 = integral_i1(a, b, m, n)?;
        let q1 = integrate_semi_infinite(
            |x| x.powi(m as i32) * (-a * x).exp() / ((x + b).powi(n as i32) * (x + 1.0)),
            (m as f64 + 1.0) / a,
            &spec,
        )?;
        worst = worst.max((i1 - q1).abs() / q1.abs().max(1e-300));
    }
    suite.check(
        "integral family vs quadrature",
        worst <= 1e-8,
        &format!("{sets} sets, worst rel err {worst:.2e} (tol 1e-8)"),
    );

    // 2. Rate closed forms vs the expected-log oracle.
    let mut worst = 0.0f64;
    for _ in 0..sets / 8 {
        let g = log_uniform(&mut rng, 0.01, 100.0);
        let m = rng.random_range(1..=8u32);
        let o = expected_log_oracle(DensityKind::PureGamma, &[g, m as f64], &spec)?;
        worst = worst.max((rate_bf(g, m)? - o).abs() / o.max(1e-300));
        let g2 = log_uniform(&mut rng, 0.01, 100.0);
        let o = expected_log_oracle(DensityKind::GammaRatio1, &[g, g2, m as f64], &spec)?;
        worst = worst.max((rate_i2(g, g2, m)? - o).abs() / o.max(1e-300));
        let d2 = log_uniform(&mut rng, 0.01, 100.0);
        let o = expected_log_oracle(DensityKind::GammaRatio2, &[g, g2, d2, m as f64], &spec)?;
        worst = worst.max((rate_i3(g, g2, d2, m)? - o).abs() / o.max(1e-300));
    }
    suite.check(
        "ergodic-rate closed forms vs expected-log oracle",
        worst <= 1e-7,
        &format!("worst rel err {worst:.2e} (tol 1e-7)"),
    );

    // 3. Monte Carlo vs closed forms (99.99% band so a healthy build never
    //    trips on sampling noise).
    let trials = if opts.quick { 50_000 } else { 200_000 };
    let mut worst_sigma = 0.0f64;
    for k in 0..3u64 {
        let mut grng = substream(opts.seed, 0x56_4d43, k);
        let x1 = -(0.1 + 0.8 * grng.random::<f64>());
        let x2 = 0.1 + 0.8 * grng.random::<f64>();
        let p0_db = 12.0 * grng.random::<f64>();
        let (_, budget) = two_cell_axis_scenario(x1, x2, p0_db, 3.7, 4, 1000.0)?;
        for profile in enumerate_profiles(&budget, 4) {
            let est = mc_ergodic_rate(&budget, &profile, None, trials, grng.random())?;
            for u in 0..2 {
                let analytic = user_rate(&profile, &budget, None, u)?;
                let sigma = (analytic - est[u].mean).abs() / (est[u].half_width_95 / 1.96);
                worst_sigma = worst_sigma.max(sigma);
            }
        }
    }
    suite.check(
        "Monte Carlo vs closed forms",
        worst_sigma < 3.89,
        &format!("worst deviation {worst_sigma:.2} sigma at {trials} trials (limit 3.89)"),
    );

    // 4. Precoder power distributions.
    let n = if opts.quick { 100_000 } else { 400_000 };
    let ks_limit = 1.95 / (n as f64).sqrt() * 1.25;
    let mut all_ok = true;
    let mut details = Vec::new();
    for victims in 0..=2usize {
        let s = sample_signal_power(4, victims, n, opts.seed ^ victims as u64)?;
        let ks = ks_statistic(&s, |x| erlang_cdf(4 - victims as u32, x));
        all_ok &= ks < ks_limit;
        details.push(format!("ZF({victims}) ks={ks:.4}"));
    }
    let s = sample_interference_power(4, n, opts.seed ^ 0xAB)?;
    let ks = ks_statistic(&s, icic_core::checks::exp_cdf);
    all_ok &= ks < ks_limit;
    details.push(format!("interference ks={ks:.4}"));
    suite.check(
        "precoder power distributions (KS)",
        all_ok,
        &format!("{} samples, limit {ks_limit:.4}: {}", n, details.join(", ")),
    );

    // 5. RVQ statistics: the simulator must follow the exact RVQ law; the
    //    2^{-B/(Nt-1)} model is reported for reference (it sits ~19% below
    //    the exact mean for Nt = 4 by construction of its approximation).
    let trials = if opts.quick { 100_000 } else { 400_000 };
    let bits = 8;
    let mean = residual_leakage_mean(4, bits, trials, opts.seed ^ 0xCD)?;
    let exact = 4.0 / 3.0 * (1.0 - quantization_xi(bits, 4)?);
    let kappa = residual_kappa(bits, 4)?;
    let rel = (mean - exact).abs() / exact;
    suite.check(
        "RVQ residual leakage vs exact law",
        rel < 0.03,
        &format!(
            "B={bits}: mean {mean:.5}, exact {exact:.5} ({:.2}% off), κ model {kappa:.5} ({:+.1}% vs mean)",
            100.0 * rel,
            100.0 * (kappa / mean - 1.0)
        ),
    );

    // 6. Reference values of the feedback laws.
    let ok = (quantization_xi(1, 2)? - 2.0 / 3.0).abs() < 1e-12
        && (residual_kappa(18, 4)? - 0.015625).abs() < 1e-15
        && bstar_bits(10f64.powf(1.5), 4, 2.0)? == 18;
    suite.check("feedback-law reference values", ok, "ξ(1,2)=2/3, κ(18,4)=2^-6, B*(15dB)=18");

    if suite.failures == 0 {
        println!("validate: all checks passed");
        Ok(true)
    } else {
        println!("validate: {} check(s) FAILED", suite.failures);
        Ok(false)
    }
}
