use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::pt::PairedSpectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayClass {
    /// Pure exponential decay.
    Monotonic,
    /// Exponential decay times `(-1)^r`: the subleading eigenvalue is real
    /// with sign opposite to the leading one.
    Alternating,
    /// Exponential decay times a cosine.
    Modulated,
    /// The leading eigenvalue is itself a conjugate pair: oscillation with
    /// no decay.
    Undamped,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecayFit {
    pub inverse_correlation_length: f64,
    pub wavenumber: f64,
    pub class: DecayClass,
    pub lambda0: C64,
    pub lambda1: C64,
    /// A third eigenvalue, not the conjugate of `lambda1`, has the same
    /// magnitude as `lambda1`.
    pub tie: bool,
}

/// Decay rate and wavenumber from the two largest-magnitude eigenvalues.
pub fn fit_decay(spectrum: &PairedSpectrum) -> Result<DecayFit> {
    let mut all = spectrum.all();
    if all.len() < 2 {
        return Err(Error::InvalidInput("decay fit needs at least 2 eigenvalues".into()));
    }
    all.sort_by(|a, b| b.norm().total_cmp(&a.norm()).then(b.im.total_cmp(&a.im)));
    let (l0, l1) = (all[0], all[1]);
    let tol = 1e-9 * l0.norm().max(f64::MIN_POSITIVE);
    let tie = all[2..]
        .iter()
        .any(|z| (z.norm() - l1.norm()).abs() <= tol && (z - l1.conj()).norm() > tol);

    let mut k = (l1.arg() - l0.arg()).abs();
    if k > PI {
        k = 2.0 * PI - k;
    }
    let undamped = l0.im != 0.0 && l1 == l0.conj();
    let class = if undamped {
        DecayClass::Undamped
    } else if k <= 1e-12 {
        DecayClass::Monotonic
    } else if (k - PI).abs() <= 1e-12 && l1.im == 0.0 && l0.im == 0.0 {
        DecayClass::Alternating
    } else {
        DecayClass::Modulated
    };
    let inverse_correlation_length = if l1.norm() == 0.0 {
        f64::INFINITY
    } else {
        (l0.norm() / l1.norm()).ln()
    };
    Ok(DecayFit {
        inverse_correlation_length,
        wavenumber: k,
        class,
        lambda0: l0,
        lambda1: l1,
        tie,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pt::{pair_and_classify, SpectrumOrdering};

    fn fit(vals: &[C64]) -> DecayFit {
        let (ps, _) = pair_and_classify(vals, SpectrumOrdering::ByMagnitude, 1e-8).unwrap();
        fit_decay(&ps).unwrap()
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn real_spectrum_is_monotonic() {
        let f = fit(&[c(2.0, 0.0), c(1.0, 0.0)]);
        assert!((f.inverse_correlation_length - 2f64.ln()).abs() < 1e-15);
        assert_eq!(f.wavenumber, 0.0);
        assert_eq!(f.class, DecayClass::Monotonic);
    }

    #[test]
    fn subleading_pair_modulates() {
        let f = fit(&[c(3.0, 0.0), c(1.0, 1.0), c(1.0, -1.0)]);
        assert!((f.inverse_correlation_length - (3.0 / 2f64.sqrt()).ln()).abs() < 1e-14);
        assert!((f.wavenumber - PI / 4.0).abs() < 1e-14);
        assert_eq!(f.class, DecayClass::Modulated);
        assert!(!f.tie);
    }

    #[test]
    fn dominant_pair_is_undamped() {
        let f = fit(&[c(2.0, 1.0), c(2.0, -1.0), c(1.0, 0.0)]);
        assert_eq!(f.class, DecayClass::Undamped);
        assert!((f.wavenumber - 2.0 * 0.5f64.atan()).abs() < 1e-14);
        assert!(f.inverse_correlation_length.abs() < 1e-15);
    }

    #[test]
    fn negative_subleading_alternates() {
        let f = fit(&[c(2.0, 0.0), c(-1.0, 0.0), c(0.5, 0.0)]);
        assert_eq!(f.class, DecayClass::Alternating);
        assert!((f.wavenumber - PI).abs() < 1e-15);
    }

    #[test]
    fn ties_are_flagged() {
        let f = fit(&[c(3.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!(f.tie);
    }

    #[test]
    fn needs_two_eigenvalues() {
        let (ps, _) = pair_and_classify(&[c(1.0, 0.0)], SpectrumOrdering::ByMagnitude, 1e-8).unwrap();
        assert!(fit_decay(&ps).is_err());
    }
}
