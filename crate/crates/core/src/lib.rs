//! Multicell downlink intercell interference cancellation (ICIC) laboratory.
//!
//! A small analytical + simulation toolkit for the downlink of a 2- or 3-cell
//! MISO network where each base station either beamforms selfishly toward its
//! own user or spends spatial degrees of freedom to null its interference
//! toward users in neighboring cells (zero-forcing ICIC).
//!
//! The crate is organized in layers:
//!
//! * [`numerics`] — exponential integrals, incomplete-gamma machinery, the
//!   `I1`/`I2`/`I3` integral family every closed-form rate reduces to, and an
//!   independent adaptive-quadrature oracle used to validate all of it.
//! * [`rates`] — closed-form ergodic achievable rates for every transmission
//!   strategy, with and without limited-feedback quantization penalties.
//! * [`network`] — cell geometry, path loss, and link budgets.
//! * [`strategy`] — strategy profiles (beamform vs. cancel) and per-link
//!   feedback-bit configuration.
//! * [`coordinator`] — joint and distributed strategy selection, CSI-cost
//!   accounting, feedback-bit scaling and allocation.
//! * [`mcsim`] — channel-level Monte Carlo: Rayleigh fading draws, eigen and
//!   zero-forcing precoders, random vector quantization, SINR statistics.
//! * [`checks`] — shared statistical test helpers (KS statistic, Erlang CDF).

pub mod checks;
pub mod coordinator;
mod error;
pub mod mcsim;
pub mod network;
pub mod numerics;
pub mod rates;
pub mod strategy;

pub use error::{Error, Result};
