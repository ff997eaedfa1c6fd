//! Transmission strategies, strategy profiles, and feedback-bit configuration.

use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// One base station's transmission strategy.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Strategy {
    /// Selfish eigen-beamforming toward the own user.
    Beamform,
    /// Zero-forcing toward the users in the victim set (cell indices).
    Cancel(BTreeSet<usize>),
}

impl Strategy {
    pub fn cancel_one(victim: usize) -> Self {
        Strategy::Cancel(BTreeSet::from([victim]))
    }

    pub fn victims(&self) -> usize {
        match self {
            Strategy::Beamform => 0,
            Strategy::Cancel(v) => v.len(),
        }
    }

    pub fn cancels_toward(&self, user: usize) -> bool {
        matches!(self, Strategy::Cancel(v) if v.contains(&user))
    }
}

/// How a profile was (or is to be) chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelectionMode {
    #[default]
    Joint,
    Distributed,
}

/// The joint choice of strategies across the coordinated base stations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyProfile {
    pub strategies: Vec<Strategy>,
    pub mode: SelectionMode,
}

impl StrategyProfile {
    pub fn new(strategies: Vec<Strategy>) -> Self {
        Self { strategies, mode: SelectionMode::Joint }
    }

    /// Every BS beamforms (the no-ICIC baseline).
    pub fn all_beamform(n: usize) -> Self {
        Self::new(vec![Strategy::Beamform; n])
    }

    /// Every BS cancels toward every neighbor (the static-ICIC baseline).
    pub fn all_cancel_both(n: usize) -> Self {
        let strategies = (0..n)
            .map(|i| Strategy::Cancel((0..n).filter(|&j| j != i).collect()))
            .collect();
        Self::new(strategies)
    }

    /// Victim sets must name other cells only and leave at least one
    /// beamforming degree of freedom.
    pub fn check_feasible(&self, n_cells: usize, nt: u32) -> Result<()> {
        if self.strategies.len() != n_cells {
            return Err(Error::Config(format!(
                "profile has {} strategies for {n_cells} cells",
                self.strategies.len()
            )));
        }
        for (i, s) in self.strategies.iter().enumerate() {
            if let Strategy::Cancel(victims) = s {
                if victims.is_empty() {
                    return Err(Error::Infeasible(format!("BS {i} cancels toward nobody")));
                }
                if victims.contains(&i) {
                    return Err(Error::Infeasible(format!("BS {i} lists itself as victim")));
                }
                if victims.iter().any(|&v| v >= n_cells) {
                    return Err(Error::Infeasible(format!("BS {i} victim out of range")));
                }
                if victims.len() as u32 > nt - 1 {
                    return Err(Error::Infeasible(format!(
                        "BS {i} cancels {} victims with only {nt} antennas",
                        victims.len()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Total victim count across BSs (the helper-CSI load).
    pub fn total_victims(&self) -> usize {
        self.strategies.iter().map(Strategy::victims).sum()
    }

    /// Compact label such as `BF,IC(1),IC(0+2)` (cell indices).
    pub fn label(&self) -> String {
        self.strategies
            .iter()
            .map(|s| match s {
                Strategy::Beamform => "BF".to_string(),
                Strategy::Cancel(v) => {
                    let idx: Vec<String> = v.iter().map(|i| i.to_string()).collect();
                    format!("IC({})", idx.join("+"))
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for StrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Per-(user, BS) feedback bits `B_{i,j}`; diagonal entries feed the home
/// link, off-diagonal entries are spent only when that BS cancels toward the
/// user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeedbackConfig {
    pub bits: Vec<Vec<u32>>,
}

impl FeedbackConfig {
    /// `B_s` on every home link, `B_I` on every helper link.
    pub fn home_helper(n_cells: usize, bs_bits: u32, helper_bits: u32) -> Self {
        let bits = (0..n_cells)
            .map(|i| (0..n_cells).map(|j| if i == j { bs_bits } else { helper_bits }).collect())
            .collect();
        Self { bits }
    }

    /// Same bit count on every link.
    pub fn uniform(n_cells: usize, bits: u32) -> Self {
        Self::home_helper(n_cells, bits, bits)
    }

    pub fn check(&self, n_cells: usize) -> Result<()> {
        if self.bits.len() != n_cells || self.bits.iter().any(|row| row.len() != n_cells) {
            return Err(Error::Config(format!("feedback bits must be {n_cells}x{n_cells}")));
        }
        Ok(())
    }

    /// Codebook size `L_{i,j} = 2^{B_{i,j}}`.
    pub fn codebook_size(&self, user: usize, bs: usize) -> u64 {
        1u64 << self.bits[user][bs].min(63)
    }
}
