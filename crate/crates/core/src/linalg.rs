//! Small dense complex linear-algebra helpers used across the decoder.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{C0, C1};

/// Orthonormality deviation of a set of columns.
pub fn orthonormality_deviation(cols: &[DVector<Complex64>]) -> f64 {
    let mut dev: f64 = 0.0;
    for (i, a) in cols.iter().enumerate() {
        for (j, b) in cols.iter().enumerate() {
            let g = a.dotc(b);
            let target = if i == j { C1 } else { C0 };
            dev = dev.max((g - target).norm());
        }
    }
    dev
}

/// Extend orthonormal columns to a full orthonormal basis of `C^dim` by
/// Gram-Schmidt over the standard basis.
pub fn complete_basis(cols: &[DVector<Complex64>], dim: usize) -> Result<Vec<DVector<Complex64>>> {
    let dev = orthonormality_deviation(cols);
    if dev > 1e-8 {
        return Err(Error::Decode(format!(
            "cannot complete a non-orthonormal set (deviation {dev:.3e})"
        )));
    }
    let mut basis: Vec<DVector<Complex64>> = cols.to_vec();
    for e in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut v = DVector::from_element(dim, C0);
        v[e] = C1;
        for b in &basis {
            let c = b.dotc(&v);
            v -= b * c;
        }
        let n = v.norm();
        if n > 1e-6 {
            basis.push(v / Complex64::new(n, 0.0));
        }
    }
    if basis.len() != dim {
        return Err(Error::Decode("basis completion failed".into()));
    }
    Ok(basis)
}

/// The unitary sending each `sources[i]` to `targets[i]`, completed
/// arbitrarily (but deterministically) on the orthogonal complements.
pub fn unitary_from_map(
    sources: &[DVector<Complex64>],
    targets: &[DVector<Complex64>],
    dim: usize,
) -> Result<DMatrix<Complex64>> {
    if sources.len() != targets.len() {
        return Err(Error::Decode("source/target count mismatch".into()));
    }
    let s = complete_basis(sources, dim)?;
    let t = complete_basis(targets, dim)?;
    let mut u = DMatrix::from_element(dim, dim, C0);
    for (sv, tv) in s.iter().zip(&t) {
        // U += |t><s|
        for r in 0..dim {
            if tv[r] == C0 {
                continue;
            }
            for c in 0..dim {
                u[(r, c)] += tv[r] * sv[c].conj();
            }
        }
    }
    Ok(u)
}

/// Deviation of `U U† = I`.
pub fn unitarity_deviation(u: &DMatrix<Complex64>) -> f64 {
    let dim = u.nrows();
    let mut g = u * u.adjoint();
    for i in 0..dim {
        g[(i, i)] -= C1;
    }
    g.norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn completes_and_maps() {
        let dim = 5;
        let mut a = DVector::from_element(dim, C0);
        a[1] = Complex64::new(0.6, 0.0);
        a[3] = Complex64::new(0.8, 0.0);
        let mut b = DVector::from_element(dim, C0);
        b[1] = Complex64::new(0.8, 0.0);
        b[3] = Complex64::new(-0.6, 0.0);
        let mut t0 = DVector::from_element(dim, C0);
        t0[0] = C1;
        let mut t1 = DVector::from_element(dim, C0);
        t1[4] = Complex64::new(0.0, 1.0);

        let u = unitary_from_map(&[a.clone(), b.clone()], &[t0.clone(), t1.clone()], dim).unwrap();
        assert!(unitarity_deviation(&u) < 1e-12);
        assert!((&u * a - t0).norm() < 1e-12);
        assert!((&u * b - t1).norm() < 1e-12);
    }

    #[test]
    fn rejects_non_orthonormal() {
        let dim = 3;
        let a = DVector::from_element(dim, Complex64::new(1.0, 0.0));
        assert!(complete_basis(&[a], dim).is_err());
    }
}
