//! Statistical helpers shared by the validation CLI and the test suites.

/// Two-sided Kolmogorov-Smirnov statistic of `samples` against `cdf`.
/// Sorts a copy of the samples.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut worst = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        let lo = i as f64 / n;
        let hi = (i + 1) as f64 / n;
        worst = worst.max((f - lo).abs()).max((hi - f).abs());
    }
    worst
}

/// `P(Exp(1) <= x)`.
pub fn exp_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -(-x).exp_m1()
    }
}

/// p-th percentile (0..100) by linear interpolation; sorts a copy.
pub fn percentile(samples: &[f64], p: f64) -> f64 {
    assert!(!samples.is_empty() && (0.0..=100.0).contains(&p));
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let rank = p / 100.0 * (xs.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    if lo == hi {
        xs[lo]
    } else {
        let w = rank - lo as f64;
        xs[lo] * (1.0 - w) + xs[hi] * w
    }
}

/// Mean and 95% half-width of a sample.
pub fn mean_ci(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, 1.96 * (var / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcsim::substream;
    use rand::Rng;

    #[test]
    fn ks_detects_right_and_wrong_distributions() {
        let mut rng = substream(1, 0x4b53, 0);
        let n = 100_000;
        let samples: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
        let good = ks_statistic(&samples, exp_cdf);
        assert!(good < 0.006, "ks {good} too large for matching dist");
        let bad = ks_statistic(&samples, |x| crate::numerics::erlang_cdf(2, x));
        assert!(bad > 0.1);
    }

    #[test]
    fn percentile_interpolation() {
        let xs: Vec<f64> = (0..=100).map(|i| i as f64).collect();
        assert_eq!(percentile(&xs, 5.0), 5.0);
        assert_eq!(percentile(&xs, 100.0), 100.0);
        assert_eq!(percentile(&xs, 0.0), 0.0);
    }
}
