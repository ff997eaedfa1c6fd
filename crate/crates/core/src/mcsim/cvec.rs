//! Small complex-vector helpers for `Nt`-dimensional precoding math.

use num_complex::Complex64;

/// `a^* · b` (conjugate the first argument).
pub fn dot_conj(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `a / ‖a‖`; returns `None` for (numerically) zero vectors.
pub fn normalize(a: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = norm(a);
    if n < 1e-150 {
        return None;
    }
    Some(a.iter().map(|x| x / n).collect())
}

/// Remove from `v` its components along an orthonormal `basis` (one
/// re-orthogonalization pass keeps the residual orthogonal to ~1e-15).
pub fn project_onto_complement(v: &[Complex64], basis: &[Vec<Complex64>]) -> Vec<Complex64> {
    let mut out = v.to_vec();
    for _ in 0..2 {
        for b in basis {
            let c = dot_conj(b, &out);
            for (o, bb) in out.iter_mut().zip(b) {
                *o -= c * bb;
            }
        }
    }
    out
}

/// Gram-Schmidt orthonormal basis of the span of `vectors`; `None` if any
/// vector is (numerically) linearly dependent on the previous ones.
pub fn orthonormal_basis(vectors: &[Vec<Complex64>]) -> Option<Vec<Vec<Complex64>>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let orig = norm(v);
        if orig < 1e-150 {
            return None;
        }
        let residual = project_onto_complement(v, &basis);
        let res_norm = norm(&residual);
        if res_norm < 1e-9 * orig {
            return None;
        }
        basis.push(residual.iter().map(|x| x / res_norm).collect());
    }
    Some(basis)
}
