use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::zn::zn_phase;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::model::{MatrixKind, ModelBundle, ModelSpec};

/// Chiral Potts chain: `-beta H = sum J/2 (w_j u w*_{j+1} + c.c.)` with
/// `u = exp(2 pi i Delta / N)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiralPottsSpec {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "J")]
    pub j: f64,
    pub delta: f64,
}

/// Real, entrywise positive and (for generic `delta`) non-symmetric
/// transfer matrix; PT acts with identity parity.
pub fn build_chiral_potts(spec: &ChiralPottsSpec) -> Result<ModelBundle> {
    let n = spec.n;
    if n < 2 {
        return Err(Error::InvalidInput(format!("chiral Potts needs N >= 2, got {n}")));
    }
    if !(0.0..=1.0).contains(&spec.delta) || !spec.j.is_finite() {
        return Err(Error::InvalidInput(format!(
            "chiral Potts needs finite J and delta in [0, 1], got J = {}, delta = {}",
            spec.j, spec.delta
        )));
    }
    // z^j u z^-k + c.c. = 2 cos(2 pi (j - k + delta) / N)
    let matrix = ComplexMatrix::from_fn(n, |j, k| {
        let angle = 2.0 * PI * (j as f64 - k as f64 + spec.delta) / n as f64;
        C64::new((spec.j * angle.cos()).exp(), 0.0)
    })?;
    let w: Vec<C64> = (0..n).map(|k| zn_phase(n, k as i64)).collect();
    let wdag: Vec<C64> = w.iter().map(|z| z.conj()).collect();
    let mut operators = BTreeMap::new();
    operators.insert("w".to_string(), ComplexMatrix::diagonal(&w));
    operators.insert("wdag".to_string(), ComplexMatrix::diagonal(&wdag));
    Ok(ModelBundle {
        parity: ComplexMatrix::identity(n),
        matrix,
        operators,
        spec: ModelSpec::ChiralPotts(*spec),
        kind: MatrixKind::Transfer,
        notes: vec!["parity is the identity; T is real".into()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_chirality_is_symmetric_clock_model() {
        let b = build_chiral_potts(&ChiralPottsSpec { n: 4, j: 0.8, delta: 0.0 }).unwrap();
        assert!(b.matrix.distance(&b.matrix.transpose()) < 1e-15);
    }

    #[test]
    fn generic_chirality_breaks_symmetry_but_not_positivity() {
        let b = build_chiral_potts(&ChiralPottsSpec { n: 3, j: 1.0, delta: 0.3 }).unwrap();
        assert!(b.matrix.distance(&b.matrix.transpose()) > 1e-3);
        assert!(b.matrix.iter().all(|z| z.re > 0.0 && z.im == 0.0));
    }

    #[test]
    fn matches_complex_exponential_form() {
        let spec = ChiralPottsSpec { n: 5, j: 0.6, delta: 0.35 };
        let b = build_chiral_potts(&spec).unwrap();
        let u = C64::from_polar(1.0, 2.0 * PI * spec.delta / 5.0);
        for j in 0..5 {
            for k in 0..5 {
                let zj = zn_phase(5, j);
                let zk = zn_phase(5, k);
                let e = ((zj * u * zk.conj() + zj.conj() * u.conj() * zk) * (spec.j / 2.0)).exp();
                assert!((e - b.matrix[(j as usize, k as usize)]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn rejects_delta_out_of_range() {
        assert!(build_chiral_potts(&ChiralPottsSpec { n: 3, j: 1.0, delta: 1.5 }).is_err());
    }
}
