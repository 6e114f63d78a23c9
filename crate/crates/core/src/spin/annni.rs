use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::model::{MatrixKind, ModelBundle, ModelSpec};

/// ANNNI chain, `-beta H = K1 sum s_j s_{j+1} + K2 sum s_j s_{j+2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnniSpec {
    #[serde(rename = "K1")]
    pub k1: f64,
    #[serde(rename = "K2")]
    pub k2: f64,
}

#[derive(Debug, Clone)]
pub struct AnnniBundles {
    /// Pair-spin transfer matrix on `(s_{2j}, s_{2j+1})`, states ordered
    /// `(++, +-, -+, --)`. `Tr T4^{L/2}` is the periodic partition function.
    pub t4: ModelBundle,
    /// Bond-variable form `T2 ⊕ T~2`, with parity `1 ⊕ sigma3`.
    pub block: ModelBundle,
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn build_annni(spec: &AnnniSpec) -> Result<AnnniBundles> {
    let (k1, k2) = (spec.k1, spec.k2);
    if !k1.is_finite() || !k2.is_finite() {
        return Err(Error::NonFinite("ANNNI couplings".into()));
    }
    let e = f64::exp;
    let diag = e(2.0 * k1 + 2.0 * k2);
    let mixed = e(2.0 * k2 - 2.0 * k1);
    #[rustfmt::skip]
    let rows = [
        diag,      e(k1),     e(-k1),    e(-2.0 * k2),
        e(-k1),    mixed,     e(-2.0 * k2), e(k1),
        e(k1),     e(-2.0 * k2), mixed,  e(-k1),
        e(-2.0 * k2), e(-k1), e(k1),     diag,
    ];
    let t4 = ComplexMatrix::from_real_rows(4, &rows)?;
    let anti = ComplexMatrix::from_fn(4, |i, j| c(if i + j == 3 { 1.0 } else { 0.0 }))?;
    let spin = ComplexMatrix::diagonal(&[c(1.0), c(1.0), c(-1.0), c(-1.0)]);

    let t2 = ComplexMatrix::from_real_rows(2, &[e(k2 + k1), e(-k2), e(-k2), e(k2 - k1)])?;
    let s = ComplexMatrix::diagonal(&[c(1.0), C64::new(0.0, 1.0)]);
    let t2_twisted = &(&s * &t2) * &s;
    let block = t2.direct_sum(&t2_twisted);
    let block_parity = ComplexMatrix::diagonal(&[c(1.0), c(1.0), c(1.0), c(-1.0)]);
    let bond = ComplexMatrix::diagonal(&[c(1.0), c(-1.0), c(1.0), c(-1.0)]);

    let mut t4_ops = BTreeMap::new();
    t4_ops.insert("s".to_string(), spin);
    let mut block_ops = BTreeMap::new();
    block_ops.insert("bond".to_string(), bond);
    Ok(AnnniBundles {
        t4: ModelBundle {
            matrix: t4,
            parity: anti,
            operators: t4_ops,
            spec: ModelSpec::Annni(*spec),
            kind: MatrixKind::Transfer,
            notes: vec!["pair states ordered (++, +-, -+, --); parity is the anti-diagonal".into()],
        },
        block: ModelBundle {
            matrix: block,
            parity: block_parity,
            operators: block_ops,
            spec: ModelSpec::AnnniBlock(*spec),
            kind: MatrixKind::Transfer,
            notes: vec!["bond states sigma = +1, -1 in each block; T~2 = diag(1, i) T2 diag(1, i)".into()],
        },
    })
}

/// `ln cosh x` without overflow.
fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// `K2* = -1/2 ln cosh K1`, where the twisted block's eigenvalues coalesce.
pub fn annni_disorder_line(k1: f64) -> f64 {
    -0.5 * ln_cosh(k1)
}

/// Discriminant `e^{2K2} cosh^2 K1 - e^{-2K2}` of the twisted block; its
/// eigenvalues are complex exactly when this is negative.
pub fn annni_twisted_discriminant(spec: &AnnniSpec) -> f64 {
    (2.0 * spec.k2).exp() * spec.k1.cosh().powi(2) - (-2.0 * spec.k2).exp()
}
