//! Cell geometry, path loss, and link budgets.
//!
//! Two layouts: a 2-cell line (BSs at `(-R, 0)` and `(+R, 0)`, shared edge at
//! the origin) and a 3-cell cluster (BSs at the vertices of an equilateral
//! triangle of side `2R·cos 30° = √3·R`, so the three cells meet at the
//! origin, each at distance `R` from its BS).
//!
//! Received power follows `P^r = P0·(R/d)^α` with noise normalized to unit
//! variance, so every power in the crate is a linear SNR.
//!
//! The 3-cell "inner area" where coordinated users live is pictorial in its
//! origin, so it is an explicit, configurable model here: a disk of radius
//! `radius_frac·R` around the cluster center, sampled with uniform radius and
//! uniform angle (density `∝ 1/r`, concentrating users near the high-OCI
//! center), optionally clamped away from the BSs by `min_bs_frac·R`. One user
//! is drawn per cell by rejection on the home-cell rule.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::mcsim::substream;
use crate::{Error, Result};

/// Cluster layouts supported by the laboratory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    TwoCell,
    ThreeCell,
}

impl Layout {
    pub fn cells(self) -> usize {
        match self {
            Layout::TwoCell => 2,
            Layout::ThreeCell => 3,
        }
    }

    /// Base-station coordinates in meters for cell radius `r`.
    pub fn bs_positions(self, r: f64) -> Vec<[f64; 2]> {
        match self {
            Layout::TwoCell => vec![[-r, 0.0], [r, 0.0]],
            Layout::ThreeCell => {
                let c30 = 3f64.sqrt() / 2.0;
                vec![[0.0, r], [-c30 * r, -0.5 * r], [c30 * r, -0.5 * r]]
            }
        }
    }
}

/// `P0·(R/d)^α` — the average received SNR at distance `d`.
pub fn received_power(distance: f64, edge_snr: f64, cell_radius: f64, pathloss_exp: f64) -> Result<f64> {
    if !(distance > 0.0) {
        return Err(Error::domain(format!(
            "received power undefined at distance {distance} (user co-located with BS)"
        )));
    }
    if !(edge_snr > 0.0 && cell_radius > 0.0) {
        return Err(Error::domain("edge SNR and cell radius must be positive"));
    }
    Ok(edge_snr * (cell_radius / distance).powf(pathloss_exp))
}

/// Average received SNRs `P^r_{i,j}` for every (user, BS) pair, plus the
/// parameters they came from.
#[derive(Debug, Clone)]
pub struct LinkBudget {
    /// `P0`, linear, at reference distance `D0 = R`.
    pub edge_snr: f64,
    /// `R` in meters.
    pub cell_radius: f64,
    /// Path loss exponent `α`.
    pub pathloss_exp: f64,
    /// Antennas per BS.
    pub nt: u32,
    /// `received_snr[i][j] = P0 (R/d_{i,j})^α`.
    pub received_snr: Vec<Vec<f64>>,
}

impl LinkBudget {
    pub fn num_cells(&self) -> usize {
        self.received_snr.len()
    }

    /// Budget with all received SNRs divided by `1 + floor` — the effect of
    /// treating out-of-cluster interference as extra white noise.
    pub fn with_noise_floor(&self, floor: f64) -> Self {
        let scale = 1.0 / (1.0 + floor);
        let mut out = self.clone();
        for row in &mut out.received_snr {
            for v in row.iter_mut() {
                *v *= scale;
            }
        }
        out
    }
}

/// Geometry of one drop: BS and user positions.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub layout: Layout,
    pub cell_radius: f64,
    pub pathloss_exp: f64,
    pub edge_snr_db: f64,
    pub nt: u32,
    pub bs_positions: Vec<[f64; 2]>,
    pub user_positions: Vec<[f64; 2]>,
}

/// Where the users of a scenario come from.
#[derive(Debug, Clone)]
pub enum Placement {
    /// Explicit positions in meters, one per cell, each inside its home cell.
    Explicit(Vec<[f64; 2]>),
    /// Random drop in the 3-cell inner area (see [`ShadowRegion`]).
    RandomShadow(ShadowRegion),
}

/// Parameterization of the 3-cell inner ("shadow") area.
#[derive(Debug, Clone, Copy)]
pub struct ShadowRegion {
    /// Disk radius around the cluster center, as a fraction of `R`.
    pub radius_frac: f64,
    /// Minimum distance to any BS, as a fraction of `R` (0 disables).
    pub min_bs_frac: f64,
}

impl Default for ShadowRegion {
    fn default() -> Self {
        Self { radius_frac: 1.15, min_bs_frac: 0.0 }
    }
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// Build a scenario and its link budget. Deterministic for a fixed seed.
pub fn build_scenario(
    layout: Layout,
    placement: &Placement,
    p0_db: f64,
    alpha: f64,
    nt: u32,
    cell_radius: f64,
    seed: u64,
) -> Result<(Scenario, LinkBudget)> {
    if nt < 1 {
        return Err(Error::Config("need at least one antenna".into()));
    }
    if !(cell_radius > 0.0) {
        return Err(Error::Config("cell radius must be positive".into()));
    }
    let bs = layout.bs_positions(cell_radius);
    let users = match placement {
        Placement::Explicit(pos) => {
            if pos.len() != layout.cells() {
                return Err(Error::Config(format!(
                    "{} user positions for {} cells",
                    pos.len(),
                    layout.cells()
                )));
            }
            for (i, &u) in pos.iter().enumerate() {
                let home = nearest_bs(&bs, u);
                if home != i {
                    return Err(Error::Config(format!(
                        "user {i} at ({:.1}, {:.1}) is closer to BS {home} than its home BS",
                        u[0], u[1]
                    )));
                }
            }
            pos.clone()
        }
        Placement::RandomShadow(region) => {
            if layout != Layout::ThreeCell {
                return Err(Error::Config("random shadow placement is a 3-cell mode".into()));
            }
            sample_shadow_users(&bs, cell_radius, region, seed)?
        }
    };
    let scenario = Scenario {
        layout,
        cell_radius,
        pathloss_exp: alpha,
        edge_snr_db: p0_db,
        nt,
        bs_positions: bs,
        user_positions: users,
    };
    let budget = scenario.link_budget()?;
    Ok((scenario, budget))
}

fn nearest_bs(bs: &[[f64; 2]], p: [f64; 2]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (j, &b) in bs.iter().enumerate() {
        let d = dist(p, b);
        if d < best_d {
            best_d = d;
            best = j;
        }
    }
    best
}

fn sample_shadow_users(
    bs: &[[f64; 2]],
    r: f64,
    region: &ShadowRegion,
    seed: u64,
) -> Result<Vec<[f64; 2]>> {
    if !(region.radius_frac > 0.0) {
        return Err(Error::Config("shadow radius_frac must be positive".into()));
    }
    let mut rng: ChaCha8Rng = substream(seed, 0x5348_4144, 0); // placement stream
    let mut users = vec![None; bs.len()];
    let mut remaining = bs.len();
    let mut attempts = 0u32;
    while remaining > 0 {
        attempts += 1;
        if attempts > 1_000_000 {
            return Err(Error::Config("shadow region sampling did not terminate".into()));
        }
        let rad = rng.random::<f64>() * region.radius_frac * r;
        let ang = rng.random::<f64>() * std::f64::consts::TAU;
        let p = [rad * ang.cos(), rad * ang.sin()];
        if bs.iter().any(|&b| dist(p, b) < region.min_bs_frac * r) {
            continue;
        }
        let home = nearest_bs(bs, p);
        if users[home].is_none() {
            users[home] = Some(p);
            remaining -= 1;
        }
    }
    Ok(users.into_iter().map(Option::unwrap).collect())
}

impl Scenario {
    /// The link budget implied by this geometry.
    pub fn link_budget(&self) -> Result<LinkBudget> {
        let p0 = 10f64.powf(self.edge_snr_db / 10.0);
        let mut received = Vec::with_capacity(self.user_positions.len());
        for &u in &self.user_positions {
            let mut row = Vec::with_capacity(self.bs_positions.len());
            for &b in &self.bs_positions {
                row.push(received_power(dist(u, b), p0, self.cell_radius, self.pathloss_exp)?);
            }
            received.push(row);
        }
        Ok(LinkBudget {
            edge_snr: p0,
            cell_radius: self.cell_radius,
            pathloss_exp: self.pathloss_exp,
            nt: self.nt,
            received_snr: received,
        })
    }

    /// Home-BS rule: every user's nearest BS is its own cell's BS.
    pub fn check_home_assignment(&self) -> bool {
        self.user_positions
            .iter()
            .enumerate()
            .all(|(i, &u)| nearest_bs(&self.bs_positions, u) == i)
    }

    /// Plain-text `key = value` serialization (reproducible experiment configs).
    pub fn to_key_value(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "layout = {}\n",
            match self.layout {
                Layout::TwoCell => "two_cell",
                Layout::ThreeCell => "three_cell",
            }
        ));
        s.push_str(&format!("cell_radius = {}\n", self.cell_radius));
        s.push_str(&format!("pathloss_exp = {}\n", self.pathloss_exp));
        s.push_str(&format!("edge_snr_db = {}\n", self.edge_snr_db));
        s.push_str(&format!("nt = {}\n", self.nt));
        for (i, b) in self.bs_positions.iter().enumerate() {
            s.push_str(&format!("bs.{i} = {} {}\n", b[0], b[1]));
        }
        for (i, u) in self.user_positions.iter().enumerate() {
            s.push_str(&format!("user.{i} = {} {}\n", u[0], u[1]));
        }
        s
    }

    /// Parse the format written by [`Scenario::to_key_value`].
    pub fn from_key_value(text: &str) -> Result<Self> {
        let mut layout = None;
        let mut cell_radius = None;
        let mut alpha = None;
        let mut p0 = None;
        let mut nt = None;
        let mut bs: Vec<(usize, [f64; 2])> = Vec::new();
        let mut users: Vec<(usize, [f64; 2])> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| Error::Config(format!("line {}: bad {what}: {value}", lineno + 1));
            match key {
                "layout" => {
                    layout = Some(match value {
                        "two_cell" => Layout::TwoCell,
                        "three_cell" => Layout::ThreeCell,
                        _ => return Err(bad("layout")),
                    })
                }
                "cell_radius" => cell_radius = Some(value.parse().map_err(|_| bad("cell_radius"))?),
                "pathloss_exp" => alpha = Some(value.parse().map_err(|_| bad("pathloss_exp"))?),
                "edge_snr_db" => p0 = Some(value.parse().map_err(|_| bad("edge_snr_db"))?),
                "nt" => nt = Some(value.parse().map_err(|_| bad("nt"))?),
                _ if key.starts_with("bs.") || key.starts_with("user.") => {
                    let idx: usize = key.split('.').nth(1).and_then(|s| s.parse().ok()).ok_or_else(|| bad("index"))?;
                    let mut it = value.split_whitespace();
                    let x: f64 = it.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("coords"))?;
                    let y: f64 = it.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("coords"))?;
                    if key.starts_with("bs.") {
                        bs.push((idx, [x, y]));
                    } else {
                        users.push((idx, [x, y]));
                    }
                }
                _ => return Err(Error::Config(format!("line {}: unknown key {key}", lineno + 1))),
            }
        }
        bs.sort_by_key(|&(i, _)| i);
        users.sort_by_key(|&(i, _)| i);
        let scenario = Scenario {
            layout: layout.ok_or_else(|| Error::Config("missing layout".into()))?,
            cell_radius: cell_radius.ok_or_else(|| Error::Config("missing cell_radius".into()))?,
            pathloss_exp: alpha.ok_or_else(|| Error::Config("missing pathloss_exp".into()))?,
            edge_snr_db: p0.ok_or_else(|| Error::Config("missing edge_snr_db".into()))?,
            nt: nt.ok_or_else(|| Error::Config("missing nt".into()))?,
            bs_positions: bs.into_iter().map(|(_, p)| p).collect(),
            user_positions: users.into_iter().map(|(_, p)| p).collect(),
        };
        if scenario.bs_positions.len() != scenario.layout.cells()
            || scenario.user_positions.len() != scenario.layout.cells()
        {
            return Err(Error::Config("position count does not match layout".into()));
        }
        Ok(scenario)
    }
}

/// A 2-cell scenario with users on the BS axis at `(x·R, 0)`; `x1 < 0` puts
/// user 1 in cell 1, `x2 > 0` puts user 2 in cell 2.
pub fn two_cell_axis_scenario(
    x1_frac: f64,
    x2_frac: f64,
    p0_db: f64,
    alpha: f64,
    nt: u32,
    cell_radius: f64,
) -> Result<(Scenario, LinkBudget)> {
    let r = cell_radius;
    build_scenario(
        Layout::TwoCell,
        &Placement::Explicit(vec![[x1_frac * r, 0.0], [x2_frac * r, 0.0]]),
        p0_db,
        alpha,
        nt,
        r,
        0,
    )
}
