use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::model::{MatrixKind, ModelBundle, ModelSpec};

/// Z(N) chain with a complex field:
/// `-beta H = sum J/2 (w_j w*_{j+1} + c.c.) + h_R (w + w*) + h_I (w - w*)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZnSpec {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "J")]
    pub j: f64,
    #[serde(rename = "hR")]
    pub h_r: f64,
    #[serde(rename = "hI")]
    pub h_i: f64,
}

impl ZnSpec {
    pub fn new(n: usize, j: f64, h_r: f64, h_i: f64) -> Self {
        ZnSpec { n, j, h_r, h_i }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidInput(format!("Z(N) needs N >= 2, got {}", self.n)));
        }
        if ![self.j, self.h_r, self.h_i].iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("Z(N) parameters".into()));
        }
        Ok(())
    }

    /// Per-site field split `h_R (w + w*) + h_I (w - w*) = H1 w + H2 w*`.
    pub fn field_components(&self) -> (f64, f64) {
        (self.h_r + self.h_i, self.h_r - self.h_i)
    }
}

/// `z^k` for `z = exp(2 pi i / N)`, with `k` reduced mod `N`.
pub fn zn_phase(n: usize, k: i64) -> C64 {
    let k = k.rem_euclid(n as i64);
    // exact on the axes so that N = 2 and N = 4 stay real where they should
    match (4 * k) as usize {
        0 => C64::new(1.0, 0.0),
        q if q == n => C64::new(0.0, 1.0),
        q if q == 2 * n => C64::new(-1.0, 0.0),
        q if q == 3 * n => C64::new(0.0, -1.0),
        _ => C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64),
    }
}

pub fn build_zn_transfer(spec: &ZnSpec) -> Result<ModelBundle> {
    spec.validate()?;
    let n = spec.n;
    let (h1, h2) = spec.field_components();
    let z = |k: usize| zn_phase(n, k as i64);
    let zc = |k: usize| zn_phase(n, -(k as i64));
    let matrix = ComplexMatrix::from_fn(n, |j, k| {
        let exponent = (z(j) * zc(k) + zc(j) * z(k)) * (spec.j / 2.0)
            + (z(j) + z(k)) * (h1 / 2.0)
            + (zc(j) + zc(k)) * (h2 / 2.0);
        exponent.exp()
    })?;
    let parity = ComplexMatrix::from_fn(n, |j, k| {
        if j == (n - k) % n {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })?;
    let w: Vec<C64> = (0..n).map(z).collect();
    let wdag: Vec<C64> = (0..n).map(zc).collect();
    let mut operators = BTreeMap::new();
    operators.insert("w".to_string(), ComplexMatrix::diagonal(&w));
    operators.insert("wdag".to_string(), ComplexMatrix::diagonal(&wdag));
    Ok(ModelBundle {
        matrix,
        parity,
        operators,
        spec: ModelSpec::Zn(*spec),
        kind: MatrixKind::Transfer,
        notes: vec![
            "states indexed 0..N-1, parity P_jk = delta(j, (N-k) mod N)".into(),
            "field split H1 = hR + hI, H2 = hR - hI; at hI = 0 the matrix is Hermitian with positive entries".into(),
        ],
    })
}

/// Discrete Fourier matrix `F_jk = z^{jk} / sqrt(N)`.
pub fn zn_fourier(n: usize) -> Result<ComplexMatrix> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("Fourier matrix needs N >= 2, got {n}")));
    }
    let norm = 1.0 / (n as f64).sqrt();
    ComplexMatrix::from_fn(n, |j, k| zn_phase(n, (j * k) as i64) * norm)
}

/// `F T F^+`, which is real for a PT-symmetric Z(N) transfer matrix.
pub fn fourier_conjugate(bundle: &ModelBundle) -> Result<ComplexMatrix> {
    let f = zn_fourier(bundle.dim())?;
    Ok(&(&f * &bundle.matrix) * &f.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermitian_without_imaginary_field() {
        let b = build_zn_transfer(&ZnSpec::new(3, 0.4, -0.3, 0.0)).unwrap();
        assert!(b.matrix.is_hermitian(1e-14));
        assert!(b.matrix.iter().all(|z| z.re > 0.0));
    }

    #[test]
    fn ising_limit_is_real_symmetric() {
        let b = build_zn_transfer(&ZnSpec::new(2, 0.7, 0.2, 1.3)).unwrap();
        assert!(b.matrix.max_abs_imag() < 1e-15);
        assert!(b.matrix.distance(&b.matrix.transpose()) < 1e-15);
        // T = [[e^{J + 2hR}, e^{-J}], [e^{-J}, e^{J - 2hR}]]
        assert!((b.matrix[(0, 0)].re - (0.7f64 + 0.4).exp()).abs() < 1e-14);
        assert!((b.matrix[(1, 1)].re - (0.7f64 - 0.4).exp()).abs() < 1e-14);
        assert!((b.matrix[(0, 1)].re - (-0.7f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn fourier_small_cases() {
        let f2 = zn_fourier(2).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let want = ComplexMatrix::from_real_rows(2, &[s, s, s, -s]).unwrap();
        assert!(f2.distance(&want) < 1e-15);
        assert!((&f2 * &f2).distance(&ComplexMatrix::identity(2)) < 1e-15);

        let f3 = zn_fourier(3).unwrap();
        assert!((&f3 * &f3.adjoint()).distance(&ComplexMatrix::identity(3)) < 1e-14);
        let p = build_zn_transfer(&ZnSpec::new(3, 0.2, 0.0, 0.0)).unwrap().parity;
        assert!((&f3 * &f3).distance(&p) < 1e-14);
        assert!(f3.distance(&f3.transpose()) < 1e-15);
    }

    #[test]
    fn rejects_small_n() {
        assert!(build_zn_transfer(&ZnSpec::new(1, 0.2, 0.0, 0.0)).is_err());
    }
}
