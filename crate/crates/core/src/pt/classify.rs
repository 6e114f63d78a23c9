use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;

/// Relative tolerance (times spectral radius) below which an imaginary part
/// is snapped to zero.
pub const DEFAULT_PAIRING_TOL: f64 = 1e-8;

/// Relative distance to coalescence that marks a spectrum near-exceptional.
pub const NEAR_EXCEPTIONAL_TOL: f64 = 1e-6;

/// Which eigenvalue plays the role of the ground state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumOrdering {
    /// Hamiltonians: lowest real part.
    ByRealPart,
    /// Transfer matrices: largest magnitude.
    ByMagnitude,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairedSpectrum {
    pub reals: Vec<f64>,
    /// One member (positive imaginary part) of each conjugate pair.
    pub pairs: Vec<C64>,
    /// Absolute tolerance actually used.
    pub pairing_tolerance: f64,
    pub ordering: SpectrumOrdering,
}

impl PairedSpectrum {
    /// The full eigenvalue multiset, conjugates included.
    pub fn all(&self) -> Vec<C64> {
        let mut out: Vec<C64> = self.reals.iter().map(|&r| C64::new(r, 0.0)).collect();
        for p in &self.pairs {
            out.push(*p);
            out.push(p.conj());
        }
        out
    }

    pub fn len(&self) -> usize {
        self.reals.len() + 2 * self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// All eigenvalues real (Hamiltonian convention, no a/b split).
    I,
    /// All real and none negative (transfer matrices).
    Ia,
    /// All real, at least one negative (transfer matrices).
    Ib,
    /// Ground state real, some excited pair complex.
    II,
    /// Ground state itself a complex pair.
    III,
}

impl Region {
    pub fn is_unbroken(self) -> bool {
        matches!(self, Region::I | Region::Ia | Region::Ib)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Region::I => "I",
            Region::Ia => "Ia",
            Region::Ib => "Ib",
            Region::II => "II",
            Region::III => "III",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Evidence {
    pub n_real: usize,
    pub n_pairs: usize,
    /// Two reals, or the two halves of a pair, within 1e-6 of coalescing.
    pub near_exceptional: bool,
    /// Complex eigenvalues without a partner that were close enough to the
    /// real axis to be treated as a coalescing pair.
    pub snapped_unpaired: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegionLabel {
    pub region: Region,
    /// One real value, or both members of the dominant pair.
    pub dominant: Vec<C64>,
    pub evidence: Evidence,
}

/// Split a spectrum into reals and conjugate pairs and label its region.
///
/// `rel_tol` is relative to the spectral radius. Under `ByMagnitude` the
/// label is refined into Ia/Ib; under `ByRealPart` region I is reported as
/// plain `I`.
pub fn pair_and_classify(
    eigenvalues: &[C64],
    ordering: SpectrumOrdering,
    rel_tol: f64,
) -> Result<(PairedSpectrum, RegionLabel)> {
    if eigenvalues.is_empty() {
        return Err(Error::InvalidInput("empty spectrum".into()));
    }
    let radius = eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let scale = if radius > 0.0 { radius } else { 1.0 };
    let tol = rel_tol * scale;
    let match_tol = 10.0 * tol;
    let near = NEAR_EXCEPTIONAL_TOL * scale;

    let mut reals = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for &z in eigenvalues {
        if z.im.abs() <= tol {
            reals.push(z.re);
        } else if z.im > 0.0 {
            upper.push(z);
        } else {
            lower.push(z);
        }
    }

    let mut evidence = Evidence::default();
    let mut pairs = Vec::new();
    let mut used = vec![false; lower.len()];
    let mut leftovers = Vec::new();
    for u in upper {
        let best = lower
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, l)| (i, (u - l.conj()).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((i, d)) if d <= match_tol => {
                used[i] = true;
                let l = lower[i];
                pairs.push(C64::new(0.5 * (u.re + l.re), 0.5 * (u.im - l.im)));
            }
            _ => leftovers.push(u),
        }
    }
    leftovers.extend(lower.iter().zip(&used).filter(|(_, u)| !**u).map(|(l, _)| *l));
    for z in leftovers {
        if z.im.abs() <= near {
            reals.push(z.re);
            evidence.snapped_unpaired += 1;
            evidence.near_exceptional = true;
        } else {
            return Err(Error::UnpairedEigenvalue { value: z });
        }
    }

    reals.sort_by(|a, b| b.total_cmp(a));
    pairs.sort_by(|a, b| b.norm().total_cmp(&a.norm()).then(b.re.total_cmp(&a.re)));
    if reals.windows(2).any(|w| (w[0] - w[1]).abs() <= near) || pairs.iter().any(|p| p.im <= near) {
        evidence.near_exceptional = true;
    }
    evidence.n_real = reals.len();
    evidence.n_pairs = pairs.len();

    let (region, dominant) = match ordering {
        SpectrumOrdering::ByMagnitude => {
            let top_real = reals
                .iter()
                .copied()
                .max_by(|a, b| a.abs().total_cmp(&b.abs()).then(a.total_cmp(b)));
            let top_pair = pairs.first().copied();
            match (top_real, top_pair) {
                (_, Some(p)) if top_real.is_none_or(|r| p.norm() > r.abs() + tol) => {
                    (Region::III, vec![p, p.conj()])
                }
                (Some(r), Some(_)) => (Region::II, vec![C64::new(r, 0.0)]),
                (Some(r), None) => {
                    let region = if reals.iter().any(|&x| x < -tol) {
                        Region::Ib
                    } else {
                        Region::Ia
                    };
                    (region, vec![C64::new(r, 0.0)])
                }
                _ => unreachable!("non-empty spectrum"),
            }
        }
        SpectrumOrdering::ByRealPart => {
            let ground_real = reals.iter().copied().min_by(|a, b| a.total_cmp(b));
            let ground_pair = pairs
                .iter()
                .copied()
                .min_by(|a, b| a.re.total_cmp(&b.re).then(b.norm().total_cmp(&a.norm())));
            match (ground_real, ground_pair) {
                (_, Some(p)) if ground_real.is_none_or(|r| p.re < r - tol) => {
                    (Region::III, vec![p, p.conj()])
                }
                (Some(r), Some(_)) => (Region::II, vec![C64::new(r, 0.0)]),
                (Some(r), None) => (Region::I, vec![C64::new(r, 0.0)]),
                _ => unreachable!("non-empty spectrum"),
            }
        }
    };

    Ok((
        PairedSpectrum {
            reals,
            pairs,
            pairing_tolerance: tol,
            ordering,
        },
        RegionLabel {
            region,
            dominant,
            evidence,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn label(vals: &[C64], ordering: SpectrumOrdering) -> Region {
        pair_and_classify(vals, ordering, DEFAULT_PAIRING_TOL).unwrap().1.region
    }

    #[test]
    fn transfer_matrix_regions() {
        use SpectrumOrdering::ByMagnitude as M;
        assert_eq!(label(&[c(3.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)], M), Region::Ia);
        assert_eq!(label(&[c(3.0, 0.0), c(-1.0, 0.0), c(0.5, 0.0)], M), Region::Ib);
        assert_eq!(label(&[c(3.0, 0.0), c(1.0, 1.0), c(1.0, -1.0)], M), Region::II);
        assert_eq!(label(&[c(2.0, 1.0), c(2.0, -1.0), c(1.0, 0.0)], M), Region::III);
    }

    #[test]
    fn hamiltonian_regions_have_no_ab_split() {
        use SpectrumOrdering::ByRealPart as R;
        assert_eq!(label(&[c(3.0, 0.0), c(-1.0, 0.0)], R), Region::I);
        assert_eq!(label(&[c(0.0, 0.0), c(2.0, 1.0), c(2.0, -1.0)], R), Region::II);
        assert_eq!(label(&[c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)], R), Region::III);
    }

    #[test]
    fn dominant_pair_reported_for_region_three() {
        let (ps, lab) =
            pair_and_classify(&[c(2.0, 1.0), c(1.0, 0.0), c(2.0, -1.0)], SpectrumOrdering::ByMagnitude, 1e-8)
                .unwrap();
        assert_eq!(ps.pairs, vec![c(2.0, 1.0)]);
        assert_eq!(lab.dominant, vec![c(2.0, 1.0), c(2.0, -1.0)]);
        assert_eq!(lab.evidence.n_pairs, 1);
    }

    #[test]
    fn unpaired_eigenvalue_is_an_error() {
        let err = pair_and_classify(&[c(1.0, 0.5), c(2.0, 0.0)], SpectrumOrdering::ByMagnitude, 1e-8);
        assert!(matches!(err, Err(Error::UnpairedEigenvalue { .. })));
    }

    #[test]
    fn tiny_imaginary_parts_are_snapped() {
        let (ps, lab) =
            pair_and_classify(&[c(2.0, 1e-12), c(1.0, -1e-13)], SpectrumOrdering::ByMagnitude, 1e-8).unwrap();
        assert_eq!(ps.reals, vec![2.0, 1.0]);
        assert_eq!(lab.region, Region::Ia);
    }

    #[test]
    fn near_coalescence_is_flagged() {
        let (_, lab) = pair_and_classify(
            &[c(2.0, 0.0), c(1.0 + 1e-8, 0.0), c(1.0, 0.0)],
            SpectrumOrdering::ByMagnitude,
            1e-8,
        )
        .unwrap();
        assert!(lab.evidence.near_exceptional);
        let (_, lab) =
            pair_and_classify(&[c(3.0, 0.0), c(1.0, 0.0)], SpectrumOrdering::ByMagnitude, 1e-8).unwrap();
        assert!(!lab.evidence.near_exceptional);
    }

    #[test]
    fn pairs_reconstruct_the_multiset() {
        let vals = [c(1.0, 2.0), c(0.5, 0.0), c(1.0, -2.0), c(-3.0, 0.5), c(-3.0, -0.5)];
        let (ps, _) = pair_and_classify(&vals, SpectrumOrdering::ByMagnitude, 1e-8).unwrap();
        let mut all = ps.all();
        let mut want = vals.to_vec();
        let key = |z: &C64| (z.re, z.im);
        all.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        want.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        assert_eq!(all, want);
    }
}
