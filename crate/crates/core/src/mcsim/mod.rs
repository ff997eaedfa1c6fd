//! Channel-level Monte Carlo: the oracle the closed forms are judged against.
//!
//! Per fading draw it builds every channel vector, constructs the precoders
//! the active strategy profile dictates (from true or quantized channel
//! directions), and averages `log2(1 + SINR)`. Trials run on counter-based
//! substreams keyed by `(master seed, stream tag, trial index)` and are
//! reduced in fixed block order, so results are bit-identical for a given
//! seed no matter how many workers participate.

mod beamform;
mod cvec;
mod estimate;
mod rng;
mod rvq;

pub use beamform::{beamformer_eigen, beamformer_zf};
pub use cvec::{dot_conj, norm, normalize, project_onto_complement};
pub use estimate::{mc_ergodic_rate, sample_interference_power, sample_signal_power, McEstimate};
pub use rng::{complex_gaussian_vector, substream};
pub use rvq::{quantize_direction, residual_leakage_mean, rvq_quantize, Codebook};

use num_complex::Complex64;

/// All channel vectors of one fading draw: `vectors[i][j]` is the `Nt`-vector
/// from BS `j` to user `i`, entries i.i.d. `CN(0, 1)`.
#[derive(Debug, Clone)]
pub struct ChannelRealization {
    pub vectors: Vec<Vec<Vec<Complex64>>>,
}

impl ChannelRealization {
    /// Draw all `cells × cells` channels for one trial.
    pub fn draw(cells: usize, nt: usize, rng: &mut impl rand::Rng) -> Self {
        let vectors = (0..cells)
            .map(|_| (0..cells).map(|_| complex_gaussian_vector(nt, rng)).collect())
            .collect();
        Self { vectors }
    }
}
