use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{eigenvalues, ComplexMatrix, EigenOrder, C64};
use crate::model::{MatrixKind, ModelBundle};

/// A one-parameter path `start -> stop` sampled at `steps` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParameterPath {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl ParameterPath {
    pub fn new(start: f64, stop: f64, steps: usize) -> Self {
        ParameterPath { start, stop, steps }
    }

    fn value(&self, i: usize) -> f64 {
        self.start + (self.stop - self.start) * i as f64 / (self.steps - 1) as f64
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FreeEnergy {
    /// `f = -ln lambda`, per site.
    pub f: C64,
    /// `Re f` is minimal: this family dominates the thermodynamic limit.
    pub stable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FreeEnergySet {
    pub param: f64,
    pub entries: Vec<FreeEnergy>,
}

impl FreeEnergySet {
    fn from_eigenvalues(param: f64, vals: &[C64]) -> Self {
        let f: Vec<C64> = vals.iter().map(|l| -l.ln()).collect();
        let min = f.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        let tol = 1e-12 * (1.0 + min.abs());
        FreeEnergySet {
            param,
            entries: f
                .into_iter()
                .map(|f| FreeEnergy {
                    stable: f.re <= min + tol,
                    f,
                })
                .collect(),
        }
    }
}

/// A zero of the dominant-pair approximation `cos(L theta) = 0`, with
/// `theta` the phase of the leading pair.
#[derive(Debug, Clone, Serialize)]
pub struct PredictedZero {
    /// Ladder index in `L theta = (2p + 1) pi / 2`.
    pub p: i64,
    pub param: f64,
    /// Shift of the exact zero away from `param`, from the spectral form
    /// `Z / |lambda0|^L = 2 cos(L theta) + R`.
    pub spectral_offset: f64,
    /// Closest exact zero found by bisection, if any.
    pub exact: Option<f64>,
    pub free_energies: FreeEnergySet,
}

#[derive(Debug, Clone, Serialize)]
pub struct LeeYangResult {
    pub length: usize,
    pub path: ParameterPath,
    /// Sign changes of the real `Z(L)` along the path, refined by bisection.
    pub exact_zeros: Vec<f64>,
    pub predicted: Vec<PredictedZero>,
    /// Largest `|spectral_offset|` over the predicted zeros.
    pub max_gap: Option<f64>,
    /// Largest `|exact - predicted|` over matched pairs.
    pub max_direct_gap: Option<f64>,
}

impl LeeYangResult {
    pub fn no_zeros_bracketed(&self) -> bool {
        self.exact_zeros.is_empty()
    }
}

struct Sample {
    /// Eigenvalues divided by the spectral radius, largest magnitude first.
    mu: Vec<C64>,
    radius: f64,
}

impl Sample {
    fn new(bundle: &ModelBundle) -> Result<Sample> {
        if bundle.kind != MatrixKind::Transfer {
            return Err(Error::InvalidInput("partition zeros are located on transfer-matrix families".into()));
        }
        let vals = eigenvalues(&bundle.matrix, EigenOrder::MagnitudeDescending)?;
        let radius = vals[0].norm();
        Ok(Sample {
            mu: vals.iter().map(|z| z / radius).collect(),
            radius,
        })
    }

    /// `Z / |lambda0|^L`.
    fn scaled_z(&self, l: usize) -> f64 {
        self.mu.iter().map(|z| z.powu(l as u32).re).sum()
    }

    /// Phase of the leading pair, when the two leading eigenvalues are one.
    fn pair_phase(&self) -> Option<f64> {
        let (a, b) = (*self.mu.first()?, *self.mu.get(1)?);
        let tol = 1e-8;
        if a.im.abs() > tol && (a - b.conj()).norm() <= 10.0 * tol {
            Some(a.im.abs().atan2(a.re))
        } else {
            None
        }
    }

    fn remainder(&self, l: usize) -> f64 {
        self.mu[2..].iter().map(|z| z.powu(l as u32).re).sum()
    }
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let mut flo = f(lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Partition-function zeros of a transfer-matrix family along a real path.
///
/// Exact zeros come from sign changes of the real `Z(L)`. Predicted zeros
/// solve `L theta = (2p + 1) pi / 2` where the leading eigenvalues form a
/// conjugate pair `|lambda0| e^{+-i theta}`. Each predicted zero carries the
/// offset the subleading eigenvalues induce, which measures the distance to
/// the exact zero even when it is below the resolution of the parameter.
pub fn lee_yang_zeros<F>(family: F, l: usize, path: &ParameterPath, exec: Exec) -> Result<LeeYangResult>
where
    F: Fn(f64) -> Result<ModelBundle> + Sync + Send,
{
    if l == 0 || path.steps < 2 || !(path.stop > path.start) {
        return Err(Error::InvalidInput("need L >= 1 and an increasing path with >= 2 steps".into()));
    }
    let sample_at = |t: f64| -> Result<Sample> { Sample::new(&family(t)?) };
    let samples = exec
        .map(path.steps, |i| sample_at(path.value(i)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let z_at = |t: f64| -> Result<f64> { Ok(sample_at(t)?.scaled_z(l)) };

    let mut exact_zeros = Vec::new();
    for i in 0..path.steps - 1 {
        let (za, zb) = (samples[i].scaled_z(l), samples[i + 1].scaled_z(l));
        if za == 0.0 {
            exact_zeros.push(path.value(i));
        } else if za * zb < 0.0 {
            exact_zeros.push(bisect(path.value(i), path.value(i + 1), z_at)?);
        }
    }

    let lf = l as f64;
    let theta_at = |t: f64| -> Result<Option<f64>> { Ok(sample_at(t)?.pair_phase()) };
    let mut predicted_params = Vec::new();
    for i in 0..path.steps - 1 {
        let (Some(ta), Some(tb)) = (samples[i].pair_phase(), samples[i + 1].pair_phase()) else {
            continue;
        };
        let (ia, ib) = (lf * ta / PI - 0.5, lf * tb / PI - 0.5);
        let (lo, hi) = (ia.min(ib), ia.max(ib));
        for p in lo.ceil() as i64..hi.ceil() as i64 {
            let target = (2 * p + 1) as f64 * PI / (2.0 * lf);
            let t = bisect(path.value(i), path.value(i + 1), |t| {
                Ok(theta_at(t)?.unwrap_or(f64::NAN) - target)
            })?;
            predicted_params.push((p, t));
        }
    }

    let width = path.stop - path.start;
    let mut predicted = Vec::new();
    for (p, t) in predicted_params {
        let s = sample_at(t)?;
        let h = 1e-6 * width;
        let dtheta = match (theta_at(t + h)?, theta_at(t - h)?) {
            (Some(a), Some(b)) => (a - b) / (2.0 * h),
            _ => f64::NAN,
        };
        let sign = if p.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let delta = (sign * s.remainder(l) / 2.0).clamp(-1.0, 1.0).asin();
        let spectral_offset = delta / (lf * dtheta);
        let exact = exact_zeros
            .iter()
            .copied()
            .min_by(|a, b| (a - t).abs().total_cmp(&(b - t).abs()))
            .filter(|z| (z - t).abs() * lf * dtheta.abs() < PI / 2.0);
        let vals: Vec<C64> = s.mu.iter().map(|z| z * s.radius).collect();
        predicted.push(PredictedZero {
            p,
            param: t,
            spectral_offset,
            exact,
            free_energies: FreeEnergySet::from_eigenvalues(t, &vals),
        });
    }

    let max_gap = predicted
        .iter()
        .map(|z| z.spectral_offset.abs())
        .reduce(f64::max);
    let max_direct_gap = predicted
        .iter()
        .filter_map(|z| z.exact.map(|e| (e - z.param).abs()))
        .reduce(f64::max);
    Ok(LeeYangResult {
        length: l,
        path: *path,
        exact_zeros,
        predicted,
        max_gap,
        max_direct_gap,
    })
}

/// Real 2x2 transfer matrix with eigenvalues `exp(-(a +- i b))`.
pub fn synthetic_pair_bundle(a: f64, b: f64) -> Result<ModelBundle> {
    let r = (-a).exp();
    let m = ComplexMatrix::from_real_rows(2, &[r * b.cos(), -r * b.sin(), r * b.sin(), r * b.cos()])?;
    Ok(ModelBundle::custom(m, MatrixKind::Transfer))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthetic_zeros_sit_on_the_ladder() {
        let l = 10;
        let path = ParameterPath::new(0.05, 1.5, 301);
        let res = lee_yang_zeros(|b| synthetic_pair_bundle(0.3, b), l, &path, Exec::Sequential).unwrap();
        assert_eq!(res.exact_zeros.len(), res.predicted.len());
        for (k, z) in res.exact_zeros.iter().enumerate() {
            let want = (2 * k + 1) as f64 * PI / (2.0 * l as f64);
            assert!((z - want).abs() < 1e-12, "{z} vs {want}");
        }
        assert!(res.max_gap.unwrap() < 1e-15);
        for p in &res.predicted {
            assert!(p.free_energies.entries.iter().all(|f| f.stable));
        }
    }

    #[test]
    fn real_spectrum_brackets_nothing() {
        let path = ParameterPath::new(-0.5, 0.5, 21);
        let res = lee_yang_zeros(
            |h| crate::spin::build_zn_transfer(&crate::spin::ZnSpec::new(3, 0.2, h, 0.0)),
            8,
            &path,
            Exec::Sequential,
        )
        .unwrap();
        assert!(res.no_zeros_bracketed());
        assert!(res.predicted.is_empty());
    }
}
