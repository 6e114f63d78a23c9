use serde::Serialize;

use super::propagator::Propagator;
use super::REALITY_TOL;
use crate::error::{Error, Result};
use crate::model::ModelBundle;
use crate::pt::{pair_and_classify, SpectrumOrdering, DEFAULT_PAIRING_TOL};

/// `Z(L)` held as `sign * exp(log_abs)` so that large `L` cannot overflow.
#[derive(Debug, Clone, Serialize)]
pub struct PartitionFunction {
    pub length: usize,
    /// `Z` itself; infinite if it does not fit in an f64.
    pub value: f64,
    pub log_abs: f64,
    /// -1, 0 or +1.
    pub sign: f64,
    /// Contribution of real eigenvalues, in units of `exp(log_scale)`.
    pub real_part: f64,
    /// Contribution of conjugate pairs, in the same units. A negative value
    /// is the sign problem made visible.
    pub pair_part: f64,
    pub log_scale: f64,
    /// `|Im Z| / sum |lambda|^L`.
    pub imag_residual: f64,
    /// `|Z_spectral - Tr T^L| / sum |lambda|^L`.
    pub direct_deviation: f64,
}

impl PartitionFunction {
    /// `Z` divided by `exp(log_scale)`.
    pub fn scaled(&self) -> f64 {
        self.real_part + self.pair_part
    }
}

/// `Z = Tr T^L` (or `Tr exp(-L H)`) from the spectrum, cross-checked against
/// the direct trace of the matrix power.
pub fn partition_function(bundle: &ModelBundle, l: usize) -> Result<PartitionFunction> {
    if l == 0 {
        return Err(Error::InvalidInput("L must be >= 1".into()));
    }
    let prop = Propagator::new(bundle)?;
    partition_from_propagator(&prop, l)
}

pub(crate) fn partition_from_propagator(prop: &Propagator, l: usize) -> Result<PartitionFunction> {
    let spectral = prop.spectral_trace(l);
    let abs_sum = prop.abs_sum(l);
    let imag_residual = spectral.im.abs() / abs_sum;
    if imag_residual > REALITY_TOL {
        return Err(Error::NotReal {
            what: format!("Z({l})"),
            residual: imag_residual,
        });
    }
    let direct = prop.matrix.pow(l).trace();
    let direct_deviation = (direct - spectral).norm() / abs_sum;

    let (paired, _) = pair_and_classify(&prop.eigenvalues, SpectrumOrdering::ByMagnitude, DEFAULT_PAIRING_TOL)?;
    let real_part: f64 = paired.reals.iter().map(|r| r.powi(l as i32)).sum();
    let pair_part: f64 = paired.pairs.iter().map(|p| 2.0 * p.powu(l as u32).re).sum();

    let z = spectral.re;
    let log_abs = z.abs().ln() + l as f64 * prop.log_scale;
    Ok(PartitionFunction {
        length: l,
        value: if z == 0.0 { 0.0 } else { z.signum() * log_abs.exp() },
        log_abs,
        sign: if z == 0.0 { 0.0 } else { z.signum() },
        real_part,
        pair_part,
        log_scale: l as f64 * prop.log_scale,
        imag_residual,
        direct_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ComplexMatrix, C64};
    use crate::model::MatrixKind;

    #[test]
    fn diagonal_example() {
        let m = ComplexMatrix::diagonal(&[C64::new(2.0, 0.0), C64::new(1.0, 0.0)]);
        let z = partition_function(&ModelBundle::custom(m, MatrixKind::Transfer), 3).unwrap();
        assert!((z.value - 9.0).abs() < 1e-12);
        assert_eq!(z.sign, 1.0);
        assert!(z.direct_deviation < 1e-15);
    }

    #[test]
    fn pure_pair_cancels() {
        // eigenvalues 1 +- i
        let m = ComplexMatrix::from_real_rows(2, &[1.0, 1.0, -1.0, 1.0]).unwrap();
        let z = partition_function(&ModelBundle::custom(m, MatrixKind::Transfer), 2).unwrap();
        assert!(z.scaled().abs() < 1e-15);
        assert!(z.value.abs() < 1e-14);
        assert_eq!(z.real_part, 0.0);
    }

    #[test]
    fn negative_pair_contribution_flips_sign() {
        let m = ComplexMatrix::from_real_rows(2, &[1.0, 1.0, -1.0, 1.0]).unwrap();
        let z = partition_function(&ModelBundle::custom(m, MatrixKind::Transfer), 4).unwrap();
        // (1+i)^4 + (1-i)^4 = -8
        assert!((z.value + 8.0).abs() < 1e-12);
        assert_eq!(z.sign, -1.0);
        assert!(z.pair_part < 0.0);
    }

    #[test]
    fn survives_huge_lengths() {
        let m = ComplexMatrix::diagonal(&[C64::new(1e3, 0.0), C64::new(5.0, 0.0)]);
        let z = partition_function(&ModelBundle::custom(m, MatrixKind::Transfer), 500).unwrap();
        assert!(z.value.is_infinite());
        assert!((z.log_abs - 500.0 * 1e3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn hamiltonian_uses_boltzmann_weights() {
        let h = ComplexMatrix::diagonal(&[C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
        let z = partition_function(&ModelBundle::custom(h, MatrixKind::Hamiltonian), 2).unwrap();
        assert!((z.value - (1.0 + (-2.0f64).exp())).abs() < 1e-14);
    }

    #[test]
    fn complex_trace_is_rejected() {
        let m = ComplexMatrix::diagonal(&[C64::new(0.0, 1.0), C64::new(2.0, 0.0)]);
        let err = partition_function(&ModelBundle::custom(m, MatrixKind::Transfer), 1);
        assert!(matches!(err, Err(Error::NotReal { .. })));
    }
}
