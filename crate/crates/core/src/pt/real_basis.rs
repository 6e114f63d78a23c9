use nalgebra::{DMatrix, DVector};

use super::symmetry::check_pt;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

#[derive(Debug, Clone)]
pub struct RealBasis {
    /// Orthonormal, PT-invariant columns.
    pub basis: ComplexMatrix,
    /// `basis^+ A basis`; real up to rounding.
    pub real_matrix: ComplexMatrix,
    /// `max |Im entry| / |A|_F` of `real_matrix`.
    pub max_imag_relative: f64,
}

/// Build a PT-invariant orthonormal basis (`v = P conj(v)` for every
/// column) and express `a` in it.
///
/// Each vector starts from a seed `phi` orthogonal to the vectors found so
/// far and is symmetrized as `alpha phi + PT(alpha phi)`; the phase `alpha`
/// is cycled when the symmetrized vector collapses.
pub fn real_basis(a: &ComplexMatrix, p: &ComplexMatrix) -> Result<RealBasis> {
    let witness = check_pt(a, p)?;
    if !witness.satisfied {
        return Err(Error::Precondition(format!(
            "matrix is not PT-symmetric under the given parity (residual {:.3e})",
            witness.residual
        )));
    }
    let n = a.dim();
    let pp_conj = p * &p.conj();
    if pp_conj.distance(&ComplexMatrix::identity(n)) > 1e-12 {
        return Err(Error::Precondition("(PT)^2 != 1 for this parity".into()));
    }

    let pt = |v: &DVector<C64>| -> DVector<C64> { p.inner() * v.map(|z| z.conj()) };
    let phases: Vec<C64> = (0..8)
        .map(|k| C64::from_polar(1.0, std::f64::consts::PI * k as f64 / 8.0))
        .collect();

    let mut found: Vec<DVector<C64>> = Vec::with_capacity(n);
    let mut attempts = 0;
    while found.len() < n {
        if attempts >= 4 * n {
            return Err(Error::RealBasisFailed);
        }
        let seed_index = attempts % n;
        let seed_phase = if (attempts / n).is_multiple_of(2) {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 1.0)
        };
        attempts += 1;

        let mut phi = DVector::from_fn(n, |i, _| {
            if i == seed_index {
                seed_phase
            } else {
                C64::new(0.0, 0.0)
            }
        });
        for _ in 0..2 {
            for b in &found {
                let overlap = b.dotc(&phi);
                phi -= b * overlap;
            }
        }
        if phi.norm() < 1e-8 {
            continue;
        }

        let mut accepted = None;
        for alpha in &phases {
            let x = &phi * *alpha;
            let mut psi = &x + pt(&x);
            if psi.norm() < 0.1 * phi.norm() {
                continue;
            }
            // overlaps between PT-invariant vectors are real
            for b in &found {
                let overlap = b.dotc(&psi).re;
                psi -= b * C64::new(overlap, 0.0);
            }
            let norm = psi.norm();
            if norm < 1e-8 {
                continue;
            }
            accepted = Some(psi / C64::new(norm, 0.0));
            break;
        }
        if let Some(v) = accepted {
            found.push(v);
        }
    }

    let mut b = DMatrix::zeros(n, n);
    for (j, v) in found.iter().enumerate() {
        b.set_column(j, v);
    }
    let basis = ComplexMatrix::new(b)?;
    let real_matrix = &(&basis.adjoint() * a) * &basis;
    let norm = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let max_imag_relative = real_matrix.max_abs_imag() / norm;
    Ok(RealBasis {
        basis,
        real_matrix,
        max_imag_relative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigenvalues, EigenOrder};

    #[test]
    fn real_symmetric_input_stays_real() {
        let a = ComplexMatrix::from_real_rows(3, &[2.0, 1.0, 0.0, 1.0, 3.0, -1.0, 0.0, -1.0, 1.0]).unwrap();
        let rb = real_basis(&a, &ComplexMatrix::identity(3)).unwrap();
        assert!(rb.max_imag_relative < 1e-14);
        let ev0 = eigenvalues(&a, EigenOrder::RealPartDescending).unwrap();
        let ev1 = eigenvalues(&rb.real_matrix, EigenOrder::RealPartDescending).unwrap();
        for (x, y) in ev0.iter().zip(&ev1) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn basis_columns_are_pt_invariant_and_orthonormal() {
        // P = swap, A = [[a, b], [conj b, conj a]] satisfies P A P = A*
        let a = ComplexMatrix::from_rows(
            2,
            &[C64::new(1.0, 0.7), C64::new(0.3, -0.2), C64::new(0.3, 0.2), C64::new(1.0, -0.7)],
        )
        .unwrap();
        let p = ComplexMatrix::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let rb = real_basis(&a, &p).unwrap();
        let b = &rb.basis;
        assert!((&b.adjoint() * b).distance(&ComplexMatrix::identity(2)) < 1e-12);
        assert!((p.inner() * b.inner().map(|z| z.conj()) - b.inner()).norm() < 1e-12);
        assert!(rb.max_imag_relative < 1e-12);
    }

    #[test]
    fn rejects_asymmetric_input() {
        let a = ComplexMatrix::diagonal(&[C64::new(0.0, 1.0), C64::new(1.0, 0.0)]);
        assert!(matches!(
            real_basis(&a, &ComplexMatrix::identity(2)),
            Err(Error::Precondition(_))
        ));
    }
}
