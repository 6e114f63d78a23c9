use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{char_poly, ComplexMatrix, C64};

/// Residual bound for `|P A P - A*| / |A|`.
pub const PT_TOL: f64 = 1e-10;

const INVOLUTION_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct PtWitness {
    pub parity: ComplexMatrix,
    /// `|P A P - A*|_F / |A|_F`
    pub residual: f64,
    pub satisfied: bool,
}

/// Verify `P A P = A*` for a unitary involution `P`.
pub fn check_pt(a: &ComplexMatrix, p: &ComplexMatrix) -> Result<PtWitness> {
    if a.dim() != p.dim() {
        return Err(Error::InvalidInput(format!(
            "matrix is {0}x{0} but parity is {1}x{1}",
            a.dim(),
            p.dim()
        )));
    }
    let id = ComplexMatrix::identity(p.dim());
    let defect = (p * p).distance(&id);
    if defect > INVOLUTION_TOL {
        return Err(Error::NotInvolution { defect });
    }
    let unitarity = (p * &p.adjoint()).distance(&id);
    if unitarity > INVOLUTION_TOL {
        return Err(Error::NotUnitary { defect: unitarity });
    }
    let norm = a.frobenius_norm();
    let residual = if norm == 0.0 {
        0.0
    } else {
        (&(p * a) * p).distance(&a.conj()) / norm
    };
    Ok(PtWitness {
        parity: p.clone(),
        residual,
        satisfied: residual <= PT_TOL,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BenderMannheim {
    pub real_coefficients: bool,
    /// `max |Im c_k| / max |c_k|`
    pub max_imag_residual: f64,
    pub coefficients: Vec<C64>,
}

/// Reality test of the characteristic-polynomial coefficients.
pub fn bender_mannheim_test(a: &ComplexMatrix, tol: f64) -> Result<BenderMannheim> {
    let coefficients = char_poly(a)?;
    let scale = coefficients.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let max_imag = coefficients.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let max_imag_residual = max_imag / scale;
    Ok(BenderMannheim {
        real_coefficients: max_imag_residual <= tol,
        max_imag_residual,
        coefficients,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn real_matrix_with_identity_parity() {
        let a = ComplexMatrix::from_real_rows(2, &[1.0, 2.0, -0.5, 3.0]).unwrap();
        let w = check_pt(&a, &ComplexMatrix::identity(2)).unwrap();
        assert!(w.satisfied);
        assert_eq!(w.residual, 0.0);
    }

    #[test]
    fn non_involution_is_rejected() {
        let a = ComplexMatrix::identity(2);
        let p = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 1.0)]);
        match check_pt(&a, &p) {
            Err(Error::NotInvolution { defect }) => assert!((defect - 2.0).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bender_mannheim_cases() {
        let herm = ComplexMatrix::from_rows(2, &[c(1.0, 0.0), c(0.0, 2.0), c(0.0, -2.0), c(-1.0, 0.0)])
            .unwrap();
        assert!(bender_mannheim_test(&herm, 1e-10).unwrap().real_coefficients);
        let d = ComplexMatrix::diagonal(&[c(0.0, 1.0), c(2.0, 0.0)]);
        let bm = bender_mannheim_test(&d, 1e-10).unwrap();
        assert!(!bm.real_coefficients);
        assert!(bm.max_imag_residual > 0.1);
    }
}
