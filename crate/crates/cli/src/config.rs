//! Experiment configuration: defaults, plain-text config files, flag
//! overrides, and the config hash stamped into every CSV.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    /// Edge SNR sweep in dB.
    pub p0_db: Vec<f64>,
    pub nt: u32,
    pub alpha: f64,
    /// Monte Carlo trials per estimate.
    pub trials: u64,
    pub seed: u64,
    /// Random drops per sweep point for ensemble experiments.
    pub placements: u64,
    pub cell_radius: f64,
    /// Inner-area disk radius (fraction of R) for 3-cell drops.
    pub radius_frac: f64,
    /// Keep-out radius around BSs (fraction of R) for 3-cell drops.
    pub min_bs_frac: f64,
    /// Fixed user-1 position on the BS axis (fraction of R), 2-cell sweeps.
    pub x1: f64,
    /// Axis grid step (fraction of R) for sweeps and region maps.
    pub step: f64,
    pub out: Option<PathBuf>,
    /// Also emit a gnuplot script next to the CSV.
    pub gnuplot: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            p0_db: vec![10.0],
            nt: 4,
            alpha: 3.7,
            trials: 10_000,
            seed: 1,
            placements: 2000,
            cell_radius: 1000.0,
            radius_frac: 1.15,
            min_bs_frac: 0.0,
            x1: -0.1,
            step: 0.05,
            out: None,
            gnuplot: false,
        }
    }
}

pub fn parse_p0_list(s: &str) -> Result<Vec<f64>> {
    let vals: Result<Vec<f64>, _> = s.split(',').map(|t| t.trim().parse::<f64>()).collect();
    let vals = vals.with_context(|| format!("bad --p0-db list: {s}"))?;
    if vals.is_empty() {
        bail!("--p0-db list is empty");
    }
    Ok(vals)
}

impl ExperimentConfig {
    /// Load `key = value` lines; unknown keys are errors.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("{}:{}: expected key = value", path.display(), lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let ctx = || format!("{}:{}: bad value for {key}", path.display(), lineno + 1);
            match key {
                "p0_db" => self.p0_db = parse_p0_list(value)?,
                "nt" => self.nt = value.parse().with_context(ctx)?,
                "alpha" => self.alpha = value.parse().with_context(ctx)?,
                "trials" => self.trials = value.parse().with_context(ctx)?,
                "seed" => self.seed = value.parse().with_context(ctx)?,
                "placements" => self.placements = value.parse().with_context(ctx)?,
                "cell_radius" => self.cell_radius = value.parse().with_context(ctx)?,
                "radius_frac" => self.radius_frac = value.parse().with_context(ctx)?,
                "min_bs_frac" => self.min_bs_frac = value.parse().with_context(ctx)?,
                "x1" => self.x1 = value.parse().with_context(ctx)?,
                "step" => self.step = value.parse().with_context(ctx)?,
                "out" => self.out = Some(PathBuf::from(value)),
                _ => bail!("{}:{}: unknown key {key}", path.display(), lineno + 1),
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.p0_db.is_empty() {
            bail!("need at least one P0 value");
        }
        if self.nt < 1 || self.nt > 16 {
            bail!("nt must be in 1..=16");
        }
        if !(self.alpha > 0.0) {
            bail!("alpha must be positive");
        }
        if self.trials < 1 {
            bail!("trials must be >= 1");
        }
        if self.placements < 1 {
            bail!("placements must be >= 1");
        }
        if !(self.cell_radius > 0.0) {
            bail!("cell_radius must be positive");
        }
        if !(self.radius_frac > 0.0) {
            bail!("radius_frac must be positive");
        }
        if self.min_bs_frac < 0.0 {
            bail!("min_bs_frac must be >= 0");
        }
        if !(-1.0..0.0).contains(&self.x1) {
            bail!("x1 must lie in (-1, 0) so user 1 is in cell 1");
        }
        if !(self.step > 0.0 && self.step < 1.0) {
            bail!("step must lie in (0, 1)");
        }
        Ok(())
    }

    /// Canonical one-line rendering; the hash of this string stamps the CSV.
    pub fn canonical_string(&self, command: &str) -> String {
        let p0: Vec<String> = self.p0_db.iter().map(|v| format!("{v}")).collect();
        format!(
            "cmd={command} p0_db={} nt={} alpha={} trials={} seed={} placements={} \
             cell_radius={} radius_frac={} min_bs_frac={} x1={} step={}",
            p0.join(","),
            self.nt,
            self.alpha,
            self.trials,
            self.seed,
            self.placements,
            self.cell_radius,
            self.radius_frac,
            self.min_bs_frac,
            self.x1,
            self.step,
        )
    }

    pub fn hash(&self, command: &str) -> u64 {
        fnv1a64(self.canonical_string(command).as_bytes())
    }
}

/// FNV-1a: stable across platforms and rust versions.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x1000_0000_01b3);
    }
    h
}
