use nalgebra::DMatrix;

use super::eig::{eigenvalues, EigenOrder};
use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Above this size the recurrence is replaced by expanding the product
/// over eigenvalues.
const LEVERRIER_MAX_DIM: usize = 64;

/// Coefficients of `det(x I - A)` in descending powers of `x`; the leading
/// coefficient is 1 and the list has `dim + 1` entries.
pub fn char_poly(a: &ComplexMatrix) -> Result<Vec<C64>> {
    let coeffs = if a.dim() <= LEVERRIER_MAX_DIM {
        faddeev_leverrier(a)
    } else {
        poly_from_roots(&eigenvalues(a, EigenOrder::MagnitudeDescending)?)
    };
    if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Overflow(format!(
            "characteristic polynomial of a {}x{} matrix",
            a.dim(),
            a.dim()
        )));
    }
    Ok(coeffs)
}

fn faddeev_leverrier(a: &ComplexMatrix) -> Vec<C64> {
    let n = a.dim();
    let id = DMatrix::<C64>::identity(n, n);
    let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
    coeffs[0] = C64::new(1.0, 0.0);
    let mut m = id.clone();
    for k in 1..=n {
        let am = a.inner() * &m;
        let c = -am.trace() / (k as f64);
        coeffs[k] = c;
        m = am + &id * c;
    }
    coeffs
}

/// Expand `prod (x - r)` into descending-power coefficients.
pub fn poly_from_roots(roots: &[C64]) -> Vec<C64> {
    let mut poly = vec![C64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![C64::new(0.0, 0.0); poly.len() + 1];
        for (i, &p) in poly.iter().enumerate() {
            next[i] += p;
            next[i + 1] -= p * r;
        }
        poly = next;
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(v: &[C64]) -> Vec<f64> {
        v.iter().map(|z| z.re).collect()
    }

    #[test]
    fn small_closed_forms() {
        assert_eq!(re(&char_poly(&ComplexMatrix::identity(2)).unwrap()), vec![1.0, -2.0, 1.0]);
        let d = ComplexMatrix::diagonal(&[C64::new(2.0, 0.0), C64::new(3.0, 0.0)]);
        assert_eq!(re(&char_poly(&d).unwrap()), vec![1.0, -5.0, 6.0]);
    }

    #[test]
    fn large_dimension_uses_roots() {
        let vals: Vec<C64> = (0..70).map(|i| C64::new(1.0 + 0.001 * i as f64, 0.0)).collect();
        let p = char_poly(&ComplexMatrix::diagonal(&vals)).unwrap();
        assert_eq!(p.len(), 71);
        let expected_trace: f64 = vals.iter().map(|z| z.re).sum();
        assert!((p[1].re + expected_trace).abs() < 1e-9);
    }

    #[test]
    fn overflow_is_reported() {
        let big = ComplexMatrix::diagonal(&[C64::new(1e200, 0.0); 4]);
        assert!(matches!(char_poly(&big), Err(Error::Overflow(_))));
    }
}
