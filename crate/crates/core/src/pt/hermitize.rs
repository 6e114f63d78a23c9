use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{eig, hermitian_eigen, ComplexMatrix, C64};

#[derive(Debug, Clone)]
pub struct Hermitization {
    /// `S` with `H_h = S A S^-1`.
    pub similarity: ComplexMatrix,
    pub similarity_inverse: ComplexMatrix,
    pub hermitian: ComplexMatrix,
    /// `|H_h - H_h^+|_F / |H_h|_F`
    pub hermiticity_defect: f64,
    /// Largest difference between the sorted spectra of `A` and `H_h`,
    /// relative to the spectral radius.
    pub spectrum_error: f64,
    pub eigenvalues: Vec<f64>,
}

/// Similarity transform of an unbroken (all-real, non-degenerate) spectrum
/// to an isospectral Hermitian matrix.
///
/// With right eigenvectors `V`, `S = (V V^+)^{-1/2}` maps `A = V L V^-1` to
/// `U L U^+`, where `V = (V V^+)^{1/2} U` is the polar decomposition.
pub fn hermitize(a: &ComplexMatrix, rel_tol: f64) -> Result<Hermitization> {
    let es = eig(a)?;
    let scale = es.spectral_radius().max(f64::MIN_POSITIVE);
    if let Some(z) = es
        .eigenvalues
        .iter()
        .filter(|z| z.im.abs() > rel_tol * scale)
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
    {
        let pair = if z.im < 0.0 { z.conj() } else { *z };
        return Err(Error::BrokenPt { pair });
    }
    let mut reals: Vec<f64> = es.eigenvalues.iter().map(|z| z.re).collect();
    reals.sort_by(|a, b| a.total_cmp(b));
    let gap = reals
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    if gap <= rel_tol * scale {
        return Err(Error::DegenerateSpectrum { gap });
    }

    let v = &es.vectors;
    let gram = ComplexMatrix::new(v * v.adjoint())?;
    let (g, u) = hermitian_eigen(&gram);
    if g.iter().any(|&x| x <= 0.0) {
        return Err(Error::DegenerateSpectrum { gap });
    }
    let diag = |f: &dyn Fn(f64) -> f64| -> DMatrix<C64> {
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            g.len(),
            g.iter().map(|&x| C64::new(f(x), 0.0)),
        ));
        &u * d * u.adjoint()
    };
    let similarity = ComplexMatrix::new(diag(&|x| x.powf(-0.5)))?;
    let similarity_inverse = ComplexMatrix::new(diag(&|x| x.sqrt()))?;
    let hermitian = &(&similarity * a) * &similarity_inverse;

    let hnorm = hermitian.frobenius_norm().max(f64::MIN_POSITIVE);
    let hermiticity_defect = hermitian.distance(&hermitian.adjoint()) / hnorm;
    let symmetrized = ComplexMatrix::new((hermitian.inner() + hermitian.adjoint().inner()) * C64::new(0.5, 0.0))?;
    let (hvals, _) = hermitian_eigen(&symmetrized);
    let spectrum_error = reals
        .iter()
        .zip(&hvals)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
        / scale;

    Ok(Hermitization {
        similarity,
        similarity_inverse,
        hermitian,
        hermiticity_defect,
        spectrum_error,
        eigenvalues: reals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermitian_input_is_left_hermitian() {
        let a = ComplexMatrix::from_rows(
            2,
            &[C64::new(2.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0), C64::new(-1.0, 0.0)],
        )
        .unwrap();
        let h = hermitize(&a, 1e-8).unwrap();
        assert!(h.hermiticity_defect < 1e-12);
        assert!(h.spectrum_error < 1e-12);
        // S is unitary for normal input, so |S|_F^2 = dim
        assert!((h.similarity.frobenius_norm().powi(2) - 2.0).abs() < 1e-10);
    }

    #[test]
    fn non_normal_real_spectrum() {
        let a = ComplexMatrix::from_real_rows(2, &[1.0, 5.0, 0.0, 3.0]).unwrap();
        let h = hermitize(&a, 1e-8).unwrap();
        assert!(h.hermiticity_defect < 1e-10);
        assert!(h.spectrum_error < 1e-10);
    }

    #[test]
    fn refusals() {
        let rot = ComplexMatrix::from_real_rows(2, &[0.0, 1.0, -1.0, 0.0]).unwrap();
        assert!(matches!(hermitize(&rot, 1e-8), Err(Error::BrokenPt { .. })));
        let jordan = ComplexMatrix::from_real_rows(2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(hermitize(&jordan, 1e-8), Err(Error::DegenerateSpectrum { .. })));
    }
}
