//! Property tests: closed forms against the quadrature oracle, rate
//! monotonicity, and reduction identities, over randomized parameters.

use icic_core::numerics::{
    expected_log_oracle, integral_i1, integral_i2, integral_i3_scaled, integrate_semi_infinite,
    DensityKind, QuadratureSpec,
};
use icic_core::rates::{rate_bf, rate_i2, rate_i3, residual_kappa, quantization_xi};
use proptest::prelude::*;

fn spec() -> QuadratureSpec {
    QuadratureSpec { abs_tol: 1e-300, rel_tol: 1e-10, max_subdivisions: 4000 }
}

/// log-uniform in [lo, hi]
fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn i2_matches_quadrature(a in log_uniform(0.01, 100.0), b in log_uniform(0.01, 100.0),
                             m in 0u32..=8, n in 0u32..=8) {
        let closed = integral_i2(a, b, m, n).unwrap();
        let q = integrate_semi_infinite(
            |x| x.powi(m as i32) * (-a * x).exp() / (x + b).powi(n as i32),
            (m as f64 + 1.0) / a,
            &spec(),
        ).unwrap();
        prop_assert!((closed - q).abs() <= 1e-8 * q.abs().max(1e-300),
                     "I2({a},{b},{m},{n}) closed {closed} vs quad {q}");
        prop_assert!(closed >= 0.0);
    }

    #[test]
    fn i1_matches_quadrature(a in log_uniform(0.01, 100.0), b in log_uniform(0.01, 100.0),
                             m in 0u32..=8, n in 0u32..=8) {
        let closed = integral_i1(a, b, m, n).unwrap();
        let q = integrate_semi_infinite(
            |x| x.powi(m as i32) * (-a * x).exp() / ((x + b).powi(n as i32) * (x + 1.0)),
            (m as f64 + 1.0) / a,
            &spec(),
        ).unwrap();
        prop_assert!((closed - q).abs() <= 1e-8 * q.abs().max(1e-300),
                     "I1({a},{b},{m},{n}) closed {closed} vs quad {q}");
        prop_assert!(closed >= 0.0);
    }

    #[test]
    fn i3_scaled_matches_quadrature(a in log_uniform(0.01, 100.0), b in log_uniform(0.01, 100.0),
                                    m in -8i32..=8) {
        let closed = integral_i3_scaled(a, b, m).unwrap();
        // e^{ab}·I3 = ∫_0^∞ (b+t)^m e^{-at} dt, stable for any ab.
        let q = integrate_semi_infinite(
            |t| (b + t).powi(m) * (-a * t).exp(),
            (m.max(0) as f64 + 1.0) / a,
            &spec(),
        ).unwrap();
        prop_assert!((closed - q).abs() <= 1e-8 * q.abs().max(1e-300),
                     "I3scaled({a},{b},{m}) closed {closed} vs quad {q}");
    }

    #[test]
    fn rate_bf_matches_oracle(g in log_uniform(0.01, 100.0), m in 1u32..=8) {
        let closed = rate_bf(g, m).unwrap();
        let oracle = expected_log_oracle(DensityKind::PureGamma, &[g, m as f64], &spec()).unwrap();
        prop_assert!((closed - oracle).abs() <= 1e-8 * oracle.abs().max(1e-12),
                     "rate_bf({g},{m}) {closed} vs oracle {oracle}");
    }

    #[test]
    fn rate_i2_matches_oracle(g1 in log_uniform(0.01, 100.0), g2 in log_uniform(0.01, 100.0),
                              m in 1u32..=8) {
        let closed = rate_i2(g1, g2, m).unwrap();
        let oracle = expected_log_oracle(
            DensityKind::GammaRatio1, &[g1, g2, m as f64], &spec()).unwrap();
        prop_assert!((closed - oracle).abs() <= 1e-7 * oracle.abs().max(1e-12),
                     "rate_i2({g1},{g2},{m}) {closed} vs oracle {oracle}");
    }

    #[test]
    fn rate_i3_matches_oracle(a in log_uniform(0.01, 100.0), d1 in log_uniform(0.01, 100.0),
                              d2 in log_uniform(0.01, 100.0), m in 1u32..=8) {
        let closed = rate_i3(a, d1, d2, m).unwrap();
        let oracle = expected_log_oracle(
            DensityKind::GammaRatio2, &[a, d1, d2, m as f64], &spec()).unwrap();
        prop_assert!((closed - oracle).abs() <= 1e-7 * oracle.abs().max(1e-12),
                     "rate_i3({a},{d1},{d2},{m}) {closed} vs oracle {oracle}");
    }

    #[test]
    fn rate_monotonicity(g in log_uniform(0.05, 50.0), d in log_uniform(0.05, 50.0),
                         m in 1u32..=7) {
        // nondecreasing in signal, nonincreasing in interference, nondecreasing in dof
        prop_assert!(rate_i2(g * 1.5, d, m).unwrap() >= rate_i2(g, d, m).unwrap() - 1e-10);
        prop_assert!(rate_i2(g, d * 1.5, m).unwrap() <= rate_i2(g, d, m).unwrap() + 1e-10);
        prop_assert!(rate_i2(g, d, m + 1).unwrap() >= rate_i2(g, d, m).unwrap() - 1e-10);
    }

    #[test]
    fn rate_i3_swap_symmetry_exact(a in log_uniform(0.05, 50.0), d1 in log_uniform(0.05, 50.0),
                                   d2 in log_uniform(0.05, 50.0), m in 1u32..=6) {
        let x = rate_i3(a, d1, d2, m).unwrap();
        let y = rate_i3(a, d2, d1, m).unwrap();
        prop_assert_eq!(x.to_bits(), y.to_bits());
    }

    #[test]
    fn reduction_chain(a in log_uniform(0.05, 50.0), d in log_uniform(0.05, 50.0), m in 1u32..=6) {
        prop_assert_eq!(rate_i3(a, d, 0.0, m).unwrap().to_bits(),
                        rate_i2(a, d, m).unwrap().to_bits());
        prop_assert_eq!(rate_i2(a, 0.0, m).unwrap().to_bits(),
                        rate_bf(a, m).unwrap().to_bits());
    }

    #[test]
    fn xi_kappa_ranges(b in 0u32..=24, nt in 2u32..=8) {
        let xi = quantization_xi(b, nt).unwrap();
        let k = residual_kappa(b, nt).unwrap();
        prop_assert!((0.0..=1.0).contains(&xi));
        prop_assert!((0.0..=1.0).contains(&k));
        prop_assert!(quantization_xi(b + 1, nt).unwrap() > xi);
        prop_assert!(residual_kappa(b + 1, nt).unwrap() < k);
    }
}

#[test]
fn lfb_collapses_to_perfect_csi_at_high_bits() {
    use icic_core::network::{build_scenario, Layout, Placement, ShadowRegion};
    use icic_core::rates::{user_rate, user_rate_3cell};
    use icic_core::strategy::FeedbackConfig;

    let (_, budget) = build_scenario(
        Layout::ThreeCell,
        &Placement::RandomShadow(ShadowRegion::default()),
        10.0,
        3.7,
        4,
        1000.0,
        21,
    )
    .unwrap();
    let bits = 30;
    let fb = FeedbackConfig::uniform(3, bits);
    let xi = icic_core::rates::quantization_xi(bits, 4).unwrap();
    let kappa = icic_core::rates::residual_kappa(bits, 4).unwrap();
    for profile in icic_core::coordinator::enumerate_profiles(&budget, 4) {
        for u in 0..3 {
            let perfect = user_rate_3cell(&profile, &budget, u).unwrap();
            let lfb = user_rate(&profile, &budget, Some(&fb), u).unwrap();
            // Signal misalignment costs at most log2(1/ξ); residual
            // interference at most log2(1 + κ·ΣP^r) (Jensen).
            let resid: f64 = (0..3)
                .filter(|&j| j != u && profile.strategies[j].cancels_toward(u))
                .map(|j| kappa * budget.received_snr[u][j])
                .sum();
            let bound = (1.0 / xi).log2() + (1.0 + resid).log2();
            assert!(bound < 0.05, "B=30 penalty bound unexpectedly large: {bound}");
            let delta = perfect - lfb;
            assert!(
                delta <= bound + 1e-9,
                "B=30 gap {delta} exceeds analytic bound {bound}"
            );
            assert!(lfb < perfect, "finite bits must cost something");
        }
    }
}
