use serde::Serialize;

use super::hamiltonian::{build_on_basis, GaugeSpec};
use super::irreps::irrep_basis;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{eigenvalues, EigenOrder, C64};
use crate::pt::{pair_and_classify, Region, SpectrumOrdering, DEFAULT_PAIRING_TOL};

/// Largest accepted movement of the lowest eigenvalues between cutoff `c`
/// and `c + 1`.
pub const DRIFT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy)]
pub struct TrajectoryOptions {
    /// How many of the lowest eigenvalues to track.
    pub k: usize,
    pub max_cutoff: usize,
    pub drift_tol: f64,
    pub exec: Exec,
}

impl Default for TrajectoryOptions {
    fn default() -> Self {
        TrajectoryOptions {
            k: 6,
            max_cutoff: 40,
            drift_tol: DRIFT_TOL,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrajectoryPoint {
    pub beta_mu: f64,
    pub cutoff: usize,
    pub basis_size: usize,
    /// Hausdorff distance between the tracked eigenvalues at `cutoff` and
    /// `cutoff + 1`.
    pub drift: f64,
    /// Lowest `k` eigenvalues, ascending real part.
    pub eigenvalues: Vec<C64>,
    pub is_complex: Vec<bool>,
    pub region: Region,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub template: GaugeSpec,
    pub points: Vec<TrajectoryPoint>,
}

impl Trajectory {
    /// First grid value at which the eigenvalue in slot `k` is complex.
    pub fn onset(&self, k: usize) -> Option<f64> {
        self.points
            .iter()
            .find(|p| p.is_complex.get(k).copied().unwrap_or(false))
            .map(|p| p.beta_mu)
    }
}

fn hausdorff(a: &[C64], b: &[C64]) -> f64 {
    let one_way = |x: &[C64], y: &[C64]| {
        x.iter()
            .map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

struct Solved {
    lowest: Vec<C64>,
    all: Vec<C64>,
    size: usize,
}

fn solve(spec: &GaugeSpec, cutoff: usize, k: usize) -> Result<Solved> {
    let basis = irrep_basis(spec.group, cutoff)?;
    let bundle = build_on_basis(&GaugeSpec { cutoff, ..*spec }, &basis)?;
    let all = eigenvalues(&bundle.matrix, EigenOrder::RealPartAscending)?;
    Ok(Solved {
        lowest: all.iter().take(k).copied().collect(),
        size: basis.len(),
        all,
    })
}

fn stabilized_point(template: &GaugeSpec, beta_mu: f64, opts: &TrajectoryOptions) -> Result<TrajectoryPoint> {
    let spec = GaugeSpec { beta_mu, ..*template };
    spec.validate()?;
    let mut cutoff = spec.cutoff;
    let mut current = solve(&spec, cutoff, opts.k)?;
    loop {
        let next = solve(&spec, cutoff + 1, opts.k)?;
        let drift = if current.lowest.len() == next.lowest.len() {
            hausdorff(&current.lowest, &next.lowest)
        } else {
            f64::INFINITY
        };
        if drift < opts.drift_tol {
            let (paired, label) = pair_and_classify(&current.all, SpectrumOrdering::ByRealPart, DEFAULT_PAIRING_TOL)?;
            let tol = paired.pairing_tolerance;
            return Ok(TrajectoryPoint {
                beta_mu,
                cutoff,
                basis_size: current.size,
                drift,
                is_complex: current.lowest.iter().map(|z| z.im.abs() > tol).collect(),
                eigenvalues: current.lowest,
                region: label.region,
            });
        }
        if cutoff + 1 >= opts.max_cutoff {
            return Err(Error::NonStabilizing {
                beta_mu,
                drift,
                cutoff: cutoff + 1,
            });
        }
        cutoff += 1;
        current = next;
    }
}

/// Lowest eigenvalues along a `beta_mu` grid, each point with its own
/// stabilized cutoff. Grid points run in parallel; output keeps grid order.
pub fn eigen_trajectory(template: &GaugeSpec, grid: &[f64], opts: &TrajectoryOptions) -> Result<Trajectory> {
    if opts.k == 0 {
        return Err(Error::InvalidInput("k must be >= 1".into()));
    }
    if grid.iter().any(|x| !x.is_finite()) || grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidInput("beta_mu grid must be finite and ascending".into()));
    }
    let points = opts
        .exec
        .map(grid.len(), |i| stabilized_point(template, grid[i], opts))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory {
        template: *template,
        points,
    })
}
