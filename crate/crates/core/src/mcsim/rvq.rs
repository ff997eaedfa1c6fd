//! Random vector quantization of channel direction information.
//!
//! Two equivalent samplers are provided:
//!
//! * [`rvq_quantize`] picks the best codeword of an explicit codebook
//!   (`argmax_k |h̃^* c_k|`, ties to the lowest index) — the operational
//!   definition.
//! * [`quantize_direction`] draws the quantized direction without
//!   materializing the codebook, using the exact law of RVQ: with `L`
//!   isotropic codewords, `cos²θ` of the winner is the maximum of `L` i.i.d.
//!   `Beta(1, Nt-1)` variables (sampled by inverse CDF), the error direction
//!   is isotropic in the orthogonal complement of the channel direction, and
//!   the codeword carries an independent uniform phase. This is what the
//!   rate simulator uses: a fresh 2^B-word codebook per trial is the model,
//!   but materializing one is quadratic-in-`L` work per draw.
//!
//! The two are cross-checked against each other in the test suite.

use num_complex::Complex64;
use rand::Rng;

use super::cvec::{dot_conj, norm, normalize, project_onto_complement};
use super::rng::{complex_gaussian_vector, substream};
use crate::{Error, Result};

/// An explicit RVQ codebook: `L` unit-norm isotropic vectors.
#[derive(Debug, Clone)]
pub struct Codebook {
    pub vectors: Vec<Vec<Complex64>>,
    pub seed: u64,
}

impl Codebook {
    /// Generate `2^bits` isotropic unit vectors of dimension `nt`.
    pub fn generate(nt: usize, bits: u32, seed: u64) -> Result<Self> {
        if nt == 0 {
            return Err(Error::Config("codebook dimension must be >= 1".into()));
        }
        if bits > 24 {
            return Err(Error::Config(format!(
                "explicit codebook with 2^{bits} entries is not practical; \
                 use quantize_direction for large codebooks"
            )));
        }
        let mut rng = substream(seed, 0x434f_4445, 0);
        let l = 1usize << bits;
        let mut vectors = Vec::with_capacity(l);
        while vectors.len() < l {
            let v = complex_gaussian_vector(nt, &mut rng);
            if let Some(u) = normalize(&v) {
                vectors.push(u);
            }
        }
        Ok(Self { vectors, seed })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Quantize `h` to the codeword maximizing `|h̃^* c_k|`; returns the index
/// and the codeword. Ties break to the lowest index.
pub fn rvq_quantize<'a>(h: &[Complex64], codebook: &'a Codebook) -> Result<(usize, &'a [Complex64])> {
    let ht = normalize(h).ok_or_else(|| Error::domain("cannot quantize a zero channel"))?;
    let mut best = 0usize;
    let mut best_val = -1.0f64;
    for (k, c) in codebook.vectors.iter().enumerate() {
        let v = dot_conj(&ht, c).norm_sqr();
        if v > best_val {
            best_val = v;
            best = k;
        }
    }
    Ok((best, &codebook.vectors[best]))
}

/// Draw the quantized direction of `h` under `bits`-bit RVQ without an
/// explicit codebook (exact in distribution; see module docs).
pub fn quantize_direction(h: &[Complex64], bits: u32, rng: &mut impl Rng) -> Result<Vec<Complex64>> {
    let nt = h.len();
    if nt < 2 {
        return Err(Error::domain("quantization needs at least 2 antennas"));
    }
    let ht = normalize(h).ok_or_else(|| Error::domain("cannot quantize a zero channel"))?;
    // sin²θ = (−expm1(ln(u)/L))^{1/(Nt−1)} with u uniform: the minimum of L
    // i.i.d. Beta(Nt-1, 1) variables, computed stably for huge L.
    let l = (bits as f64).exp2();
    let u: f64 = rng.random::<f64>().max(1e-300);
    let sin2 = (-f64::exp_m1(u.ln() / l)).powf(1.0 / (nt as f64 - 1.0));
    let cos2 = (1.0 - sin2).max(0.0);
    // isotropic error direction in the complement of the channel direction
    let w = loop {
        let raw = complex_gaussian_vector(nt, rng);
        let ortho = project_onto_complement(&raw, std::slice::from_ref(&ht));
        if norm(&ortho) > 1e-6 {
            break normalize(&ortho).expect("norm checked above");
        }
    };
    let phase = Complex64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU);
    let (c, s) = (cos2.sqrt(), sin2.sqrt());
    Ok(ht.iter().zip(&w).map(|(a, b)| phase * (c * a + s * b)).collect())
}

/// Sample mean of the post-ZF residual interference `|h_v^* f|²` when the
/// victim CDI is `bits`-bit quantized: the helper BS projects its own
/// quantized direction onto the nullspace of the quantized victim direction,
/// and the true victim channel leaks through the quantization error.
pub fn residual_leakage_mean(nt: usize, bits: u32, trials: u64, seed: u64) -> Result<f64> {
    use rayon::prelude::*;
    if nt < 2 {
        return Err(Error::domain("need nt >= 2"));
    }
    let block = 8192u64;
    let blocks = trials.div_ceil(block);
    let sums: Vec<f64> = (0..blocks)
        .into_par_iter()
        .map(|bi| {
            let lo = bi * block;
            let hi = (lo + block).min(trials);
            let mut acc = 0.0;
            for t in lo..hi {
                let mut rng = substream(seed, 0x4c45_414b, t);
                let h_victim = complex_gaussian_vector(nt, &mut rng);
                let h_own = complex_gaussian_vector(nt, &mut rng);
                let q_victim = quantize_direction(&h_victim, bits, &mut rng).expect("nonzero");
                let q_own = quantize_direction(&h_own, bits, &mut rng).expect("nonzero");
                let f = super::beamform::beamformer_zf(&q_own, &[q_victim]).expect("feasible");
                acc += dot_conj(&h_victim, &f).norm_sqr();
            }
            acc
        })
        .collect();
    Ok(sums.iter().sum::<f64>() / trials as f64)
}
