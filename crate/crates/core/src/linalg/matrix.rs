use std::ops::{Add, Deref, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Dense square complex matrix with finite entries.
///
/// Transfer matrices and Hamiltonians alike are carried in this type. The
/// wrapped `DMatrix` is exposed read-only through `Deref`; every constructor
/// checks squareness and finiteness.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    pub fn new(inner: DMatrix<C64>) -> Result<Self> {
        if inner.nrows() != inner.ncols() {
            return Err(Error::InvalidInput(format!(
                "matrix is {}x{}, expected square",
                inner.nrows(),
                inner.ncols()
            )));
        }
        if inner.nrows() == 0 {
            return Err(Error::InvalidInput("matrix dimension must be >= 1".into()));
        }
        if inner.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("matrix".into()));
        }
        Ok(ComplexMatrix(inner))
    }

    /// Row-major construction from a flat list of entries.
    pub fn from_rows(dim: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::InvalidInput(format!(
                "{} entries given for a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn from_real_rows(dim: usize, entries: &[f64]) -> Result<Self> {
        let c: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_rows(dim, &c)
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        Self::new(DMatrix::from_fn(dim, dim, f))
    }

    pub fn identity(dim: usize) -> Self {
        ComplexMatrix(DMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix(DMatrix::zeros(dim, dim))
    }

    pub fn diagonal(values: &[C64]) -> Self {
        let n = values.len();
        ComplexMatrix(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                values[i]
            } else {
                C64::new(0.0, 0.0)
            }
        }))
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let (a, b) = (self.dim(), other.dim());
        let mut out = DMatrix::zeros(a + b, a + b);
        out.view_mut((0, 0), (a, a)).copy_from(&self.0);
        out.view_mut((a, a), (b, b)).copy_from(&other.0);
        ComplexMatrix(out)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn inner(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix(self.0.adjoint())
    }

    pub fn conj(&self) -> ComplexMatrix {
        ComplexMatrix(self.0.map(|z| z.conj()))
    }

    pub fn transpose(&self) -> ComplexMatrix {
        ComplexMatrix(self.0.transpose())
    }

    pub fn scale(&self, s: C64) -> ComplexMatrix {
        ComplexMatrix(self.0.map(|z| z * s))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.0.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (&self.0 - self.0.adjoint()).iter().all(|z| z.norm() <= tol)
    }

    /// Frobenius distance to another matrix of the same size.
    pub fn distance(&self, other: &ComplexMatrix) -> f64 {
        (&self.0 - &other.0)
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `self^power` by repeated squaring.
    pub fn pow(&self, power: usize) -> ComplexMatrix {
        let mut result = DMatrix::identity(self.dim(), self.dim());
        let mut base = self.0.clone();
        let mut p = power;
        while p > 0 {
            if p & 1 == 1 {
                result = &result * &base;
            }
            p >>= 1;
            if p > 0 {
                base = &base * &base;
            }
        }
        ComplexMatrix(result)
    }

    pub fn try_inverse(&self) -> Option<ComplexMatrix> {
        self.0.clone().try_inverse().map(ComplexMatrix)
    }

    /// Principal submatrix on the given row/column indices, in that order.
    pub fn restrict(&self, indices: &[usize]) -> ComplexMatrix {
        let k = indices.len();
        ComplexMatrix(DMatrix::from_fn(k, k, |i, j| {
            self.0[(indices[i], indices[j])]
        }))
    }
}

impl Deref for ComplexMatrix {
    type Target = DMatrix<C64>;

    fn deref(&self) -> &DMatrix<C64> {
        &self.0
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rejects_non_finite_and_empty() {
        assert!(ComplexMatrix::from_rows(1, &[c(f64::NAN, 0.0)]).is_err());
        assert!(ComplexMatrix::from_rows(0, &[]).is_err());
        assert!(ComplexMatrix::from_rows(2, &[c(1.0, 0.0); 3]).is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = ComplexMatrix::from_rows(2, &[c(1.0, 0.5), c(0.2, 0.0), c(-0.3, 0.1), c(0.7, 0.0)])
            .unwrap();
        let mut direct = ComplexMatrix::identity(2);
        for _ in 0..7 {
            direct = &direct * &a;
        }
        assert!(a.pow(7).distance(&direct) < 1e-13);
        assert_eq!(a.pow(0), ComplexMatrix::identity(2));
    }

    #[test]
    fn direct_sum_places_blocks() {
        let a = ComplexMatrix::diagonal(&[c(1.0, 0.0)]);
        let b = ComplexMatrix::diagonal(&[c(2.0, 0.0), c(3.0, 0.0)]);
        let s = a.direct_sum(&b);
        assert_eq!(s.dim(), 3);
        assert_eq!(s[(2, 2)], c(3.0, 0.0));
        assert_eq!(s[(0, 1)], c(0.0, 0.0));
    }
}
