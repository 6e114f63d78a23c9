use serde::{Deserialize, Serialize};

use super::propagator::Propagator;
use super::{PARTITION_ZERO_TOL, REALITY_TOL};
use crate::error::{Error, Result};
use crate::linalg::{eig_with, ComplexMatrix, EigOptions, EigenOrder, C64};
use crate::model::{MatrixKind, ModelBundle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelatorMethod {
    /// `Tr[A T^r B T^(L-r)] / Z` from explicit matrix powers.
    DirectTrace,
    /// The same sum over left/right eigenvector matrix elements.
    Spectral,
}

impl CorrelatorMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CorrelatorMethod::DirectTrace => "direct_trace",
            CorrelatorMethod::Spectral => "spectral",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrelatorSeries {
    pub separations: Vec<usize>,
    pub values: Vec<f64>,
    pub length: usize,
    pub operators: [String; 2],
    pub method: CorrelatorMethod,
    /// Whether `<A><B>` was subtracted.
    pub connected: bool,
    /// `max |Im G| / max |G|` before the imaginary parts were dropped.
    pub imag_residual: f64,
}

fn trace_of_product(x: &ComplexMatrix, y: &ComplexMatrix) -> C64 {
    let n = x.dim();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += x[(i, j)] * y[(j, i)];
        }
    }
    acc
}

fn guard_zero(z: C64, abs_sum: f64) -> Result<()> {
    let ratio = z.norm() / abs_sum;
    if ratio < PARTITION_ZERO_TOL {
        return Err(Error::PartitionZero { ratio });
    }
    Ok(())
}

fn real_or_err(v: C64, what: &str) -> Result<f64> {
    if v.im.abs() > REALITY_TOL * (1.0 + v.re.abs()) {
        return Err(Error::NotReal {
            what: what.to_string(),
            residual: v.im.abs(),
        });
    }
    Ok(v.re)
}

/// `<A> = Tr[A T^L] / Z`.
pub fn one_point(bundle: &ModelBundle, op: &str, l: usize) -> Result<f64> {
    let a = bundle.operator(op)?;
    let prop = Propagator::new(bundle)?;
    let p = prop.matrix.pow(l);
    let z = p.trace();
    guard_zero(z, prop.abs_sum(l))?;
    real_or_err(trace_of_product(a, &p) / z, &format!("<{op}>"))
}

/// Eigen-data of the rescaled propagator: `(mu, V, V^-1)`.
fn spectral_parts(bundle: &ModelBundle) -> Result<(Vec<C64>, ComplexMatrix, ComplexMatrix)> {
    let es = eig_with(&bundle.matrix, &EigOptions::ordered(EigenOrder::MagnitudeDescending))?;
    let radius = es.spectral_radius();
    let vals = &es.eigenvalues;
    let mut gap = f64::INFINITY;
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            gap = gap.min((vals[i] - vals[j]).norm());
        }
    }
    if gap <= 1e-8 * radius.max(1.0) || !es.condition_estimate.is_finite() {
        return Err(Error::DegenerateSpectrum { gap });
    }
    let mu: Vec<C64> = match bundle.kind {
        MatrixKind::Transfer => vals.iter().map(|z| z / radius).collect(),
        MatrixKind::Hamiltonian => {
            let e_min = vals.iter().map(|e| e.re).fold(f64::INFINITY, f64::min);
            vals.iter().map(|e| (-(e - e_min)).exp()).collect()
        }
    };
    let v = ComplexMatrix::new(es.vectors)?;
    let v_inv = v.try_inverse().ok_or(Error::DegenerateSpectrum { gap })?;
    Ok((mu, v, v_inv))
}

/// `G(r) = <A(0) B(r)>` for `r = 0..=L` on a periodic chain of length `L`.
///
/// With `connected`, `<A><B>` is subtracted. The spectral method refuses
/// degenerate spectra; the direct method always runs.
pub fn two_point(
    bundle: &ModelBundle,
    op1: &str,
    op2: &str,
    l: usize,
    method: CorrelatorMethod,
    connected: bool,
) -> Result<CorrelatorSeries> {
    if l == 0 {
        return Err(Error::InvalidInput("L must be >= 1".into()));
    }
    let a = bundle.operator(op1)?;
    let b = bundle.operator(op2)?;
    let (raw, z, one_a, one_b) = match method {
        CorrelatorMethod::DirectTrace => {
            let prop = Propagator::new(bundle)?;
            let powers = prop.powers(l);
            let z = powers[l].trace();
            guard_zero(z, prop.abs_sum(l))?;
            let raw: Vec<C64> = (0..=l)
                .map(|r| trace_of_product(&(a * &powers[r]), &(b * &powers[l - r])))
                .collect();
            let one_a = trace_of_product(a, &powers[l]);
            let one_b = trace_of_product(b, &powers[l]);
            (raw, z, one_a, one_b)
        }
        CorrelatorMethod::Spectral => {
            let (mu, v, v_inv) = spectral_parts(bundle)?;
            let abs_sum: f64 = mu.iter().map(|m| m.norm().powi(l as i32)).sum();
            let z: C64 = mu.iter().map(|m| m.powu(l as u32)).sum();
            guard_zero(z, abs_sum)?;
            let am = &(&v_inv * a) * &v;
            let bm = &(&v_inv * b) * &v;
            let n = mu.len();
            let raw: Vec<C64> = (0..=l)
                .map(|r| {
                    let mut acc = C64::new(0.0, 0.0);
                    for j in 0..n {
                        let wj = mu[j].powu((l - r) as u32);
                        for k in 0..n {
                            acc += am[(j, k)] * mu[k].powu(r as u32) * bm[(k, j)] * wj;
                        }
                    }
                    acc
                })
                .collect();
            let one = |m: &ComplexMatrix| (0..n).map(|j| m[(j, j)] * mu[j].powu(l as u32)).sum::<C64>();
            (raw, z, one(&am), one(&bm))
        }
    };
    let shift = if connected { (one_a / z) * (one_b / z) } else { C64::new(0.0, 0.0) };
    let g: Vec<C64> = raw.iter().map(|x| x / z - shift).collect();
    let max_abs = g.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let max_im = g.iter().map(|x| x.im.abs()).fold(0.0, f64::max);
    let imag_residual = if max_abs > 0.0 { max_im / max_abs } else { 0.0 };
    if imag_residual > REALITY_TOL {
        return Err(Error::NotReal {
            what: format!("<{op1} {op2}>"),
            residual: imag_residual,
        });
    }
    Ok(CorrelatorSeries {
        separations: (0..=l).collect(),
        values: g.iter().map(|x| x.re).collect(),
        length: l,
        operators: [op1.to_string(), op2.to_string()],
        method,
        connected,
        imag_residual,
    })
}
