//! Precoder construction: eigen-beamforming and zero-forcing projection.

use num_complex::Complex64;

use super::cvec::{normalize, orthonormal_basis, project_onto_complement};
use crate::{Error, Result};

/// Eigen-beamformer: the own-channel direction `h/‖h‖`.
pub fn beamformer_eigen(h_own: &[Complex64]) -> Result<Vec<Complex64>> {
    normalize(h_own).ok_or_else(|| Error::domain("eigen beamformer of a zero channel"))
}

/// Zero-forcing beamformer: the normalized projection of the own channel on
/// the nullspace of the victim channels. Leakage toward every victim is zero
/// up to roundoff; the victim set must be linearly independent and leave at
/// least one spatial degree of freedom.
pub fn beamformer_zf(h_own: &[Complex64], victims: &[Vec<Complex64>]) -> Result<Vec<Complex64>> {
    let nt = h_own.len();
    if victims.is_empty() {
        return beamformer_eigen(h_own);
    }
    if victims.len() >= nt {
        return Err(Error::Infeasible(format!(
            "cannot null {} victims with {nt} antennas (need victims <= Nt-1)",
            victims.len()
        )));
    }
    let basis = orthonormal_basis(victims)
        .ok_or_else(|| Error::Infeasible("victim channel matrix is rank deficient".into()))?;
    let w = project_onto_complement(h_own, &basis);
    normalize(&w).ok_or_else(|| {
        Error::Infeasible("own channel lies in the victim span; ZF direction undefined".into())
    })
}

/// `|f^* h|^2` — received power of channel `h` under unit-norm precoder `f`.
pub fn beam_power(f: &[Complex64], h: &[Complex64]) -> f64 {
    super::cvec::dot_conj(f, h).norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcsim::cvec::norm;
    use crate::mcsim::{complex_gaussian_vector, dot_conj, substream};

    #[test]
    fn eigen_on_basis_vector() {
        let e1 = vec![Complex64::new(2.0, 0.0), Complex64::ZERO];
        let f = beamformer_eigen(&e1).unwrap();
        assert!((f[0] - Complex64::ONE).norm() < 1e-15);
        assert!(beamformer_eigen(&[Complex64::ZERO; 4]).is_err());
    }

    #[test]
    fn eigen_phase_invariance() {
        let mut rng = substream(3, 9, 0);
        let h = complex_gaussian_vector(4, &mut rng);
        let c = Complex64::from_polar(2.5, 1.1);
        let scaled: Vec<Complex64> = h.iter().map(|x| x * c).collect();
        let p1 = beam_power(&beamformer_eigen(&h).unwrap(), &h);
        let p2 = beam_power(&beamformer_eigen(&scaled).unwrap(), &h);
        assert!((p1 - p2).abs() < 1e-10 * p1);
    }

    #[test]
    fn zf_orthogonality_contract() {
        let mut rng = substream(4, 9, 1);
        for n_victims in 1..=3 {
            for _ in 0..200 {
                let own = complex_gaussian_vector(4, &mut rng);
                let victims: Vec<_> = (0..n_victims).map(|_| complex_gaussian_vector(4, &mut rng)).collect();
                let f = beamformer_zf(&own, &victims).unwrap();
                assert!((norm(&f) - 1.0).abs() < 1e-12);
                for v in &victims {
                    assert!(dot_conj(&f, v).norm() <= 1e-10 * norm(v), "leakage too high");
                }
            }
        }
    }

    #[test]
    fn zf_with_orthogonal_victims_is_eigen() {
        let own = vec![Complex64::ONE, Complex64::ZERO, Complex64::ZERO, Complex64::ZERO];
        let victim = vec![Complex64::ZERO, Complex64::ONE, Complex64::ZERO, Complex64::ZERO];
        let f = beamformer_zf(&own, &[victim]).unwrap();
        assert!((f[0] - Complex64::ONE).norm() < 1e-12);
    }

    #[test]
    fn zf_rejects_too_many_or_dependent_victims() {
        let mut rng = substream(5, 9, 2);
        let own = complex_gaussian_vector(4, &mut rng);
        let vs: Vec<_> = (0..4).map(|_| complex_gaussian_vector(4, &mut rng)).collect();
        assert!(matches!(beamformer_zf(&own, &vs), Err(Error::Infeasible(_))));
        let v = complex_gaussian_vector(4, &mut rng);
        let v2: Vec<Complex64> = v.iter().map(|x| x * Complex64::new(0.0, 3.0)).collect();
        assert!(matches!(beamformer_zf(&own, &[v, v2]), Err(Error::Infeasible(_))));
    }
}
