use crate::error::{Error, Result};
use crate::linalg::{eig_with, ComplexMatrix, EigOptions, EigenOrder, C64};
use crate::model::{MatrixKind, ModelBundle};

/// The one-step propagator of a bundle rescaled to unit spectral radius.
///
/// For a transfer matrix this is `T / s` with `s = max |lambda|`; for a
/// Hamiltonian it is `exp(-(H - E_min))`, built from the eigendecomposition,
/// with `s = exp(-E_min)` and `E_min` the lowest real part. Powers of the
/// propagator never overflow, and `ln s` carries the dropped scale.
#[derive(Debug, Clone)]
pub struct Propagator {
    pub matrix: ComplexMatrix,
    /// Eigenvalues of `matrix`, largest magnitude first.
    pub eigenvalues: Vec<C64>,
    pub log_scale: f64,
}

impl Propagator {
    pub fn new(bundle: &ModelBundle) -> Result<Self> {
        match bundle.kind {
            MatrixKind::Transfer => {
                let vals = crate::linalg::eigenvalues(&bundle.matrix, EigenOrder::MagnitudeDescending)?;
                let s = vals[0].norm();
                if s == 0.0 {
                    return Err(Error::InvalidInput("transfer matrix is nilpotent".into()));
                }
                Ok(Propagator {
                    matrix: bundle.matrix.scale(C64::new(1.0 / s, 0.0)),
                    eigenvalues: vals.iter().map(|z| z / s).collect(),
                    log_scale: s.ln(),
                })
            }
            MatrixKind::Hamiltonian => {
                let es = eig_with(&bundle.matrix, &EigOptions::ordered(EigenOrder::RealPartAscending))?;
                let e_min = es.eigenvalues[0].re;
                let weights: Vec<C64> = es.eigenvalues.iter().map(|e| (-(e - e_min)).exp()).collect();
                let v = ComplexMatrix::new(es.vectors.clone())?;
                let v_inv = v.try_inverse().ok_or(Error::DegenerateSpectrum { gap: 0.0 })?;
                let matrix = &(&v * &ComplexMatrix::diagonal(&weights)) * &v_inv;
                let order = crate::linalg::sort_permutation(&weights, EigenOrder::MagnitudeDescending);
                Ok(Propagator {
                    matrix,
                    eigenvalues: order.into_iter().map(|i| weights[i]).collect(),
                    log_scale: -e_min,
                })
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `sum_j |lambda_j|^L` in units of `s^L`.
    pub fn abs_sum(&self, l: usize) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm().powi(l as i32)).sum()
    }

    /// `sum_j lambda_j^L` in units of `s^L`.
    pub fn spectral_trace(&self, l: usize) -> C64 {
        self.eigenvalues.iter().map(|z| z.powu(l as u32)).sum()
    }

    /// `[P^0, P^1, ..., P^L]`.
    pub fn powers(&self, l: usize) -> Vec<ComplexMatrix> {
        let mut out = Vec::with_capacity(l + 1);
        out.push(ComplexMatrix::identity(self.dim()));
        for k in 1..=l {
            out.push(&out[k - 1] * &self.matrix);
        }
        out
    }
}
