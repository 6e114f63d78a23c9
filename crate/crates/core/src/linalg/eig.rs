//! Dense eigensolver for general complex matrices.
//!
//! Pipeline: diagonal balancing, Householder reduction to upper Hessenberg
//! form, single-shift complex QR sweeps down to a Schur form `A = Z T Z^+`,
//! then eigenvectors of the triangular factor by back-substitution.

use nalgebra::DMatrix;

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;

/// How eigenvalues are sorted on output. Ties are broken by ascending
/// imaginary part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenOrder {
    #[default]
    RealPartDescending,
    RealPartAscending,
    MagnitudeDescending,
}

#[derive(Debug, Clone)]
pub struct EigOptions {
    pub order: EigenOrder,
    /// Relative residual bound: `|A v - l v| <= tol * |A| * |v|`.
    pub residual_tol: f64,
    pub max_sweeps_per_eigenvalue: usize,
    /// Label used in convergence diagnostics.
    pub context: String,
}

impl Default for EigOptions {
    fn default() -> Self {
        EigOptions {
            order: EigenOrder::default(),
            residual_tol: 1e-10,
            max_sweeps_per_eigenvalue: 60,
            context: "matrix".into(),
        }
    }
}

impl EigOptions {
    pub fn ordered(order: EigenOrder) -> Self {
        EigOptions {
            order,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub eigenvalues: Vec<C64>,
    /// Column `j` is the unit-norm right eigenvector of `eigenvalues[j]`.
    pub vectors: DMatrix<C64>,
    /// `|V|_F |V^-1|_F`; infinite when `V` is numerically singular.
    pub condition_estimate: f64,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn reorder(&mut self, order: EigenOrder) {
        let perm = sort_permutation(&self.eigenvalues, order);
        self.eigenvalues = perm.iter().map(|&i| self.eigenvalues[i]).collect();
        let old = self.vectors.clone();
        for (dst, &src) in perm.iter().enumerate() {
            self.vectors.set_column(dst, &old.column(src));
        }
    }
}

/// Eigendecomposition with default options (descending real part).
pub fn eig(a: &ComplexMatrix) -> Result<EigenSystem> {
    eig_with(a, &EigOptions::default())
}

pub fn eig_with(a: &ComplexMatrix, opts: &EigOptions) -> Result<EigenSystem> {
    let n = a.dim();
    let mut h = a.inner().clone();
    let scaling = balance(&mut h);
    let mut z = DMatrix::identity(n, n);
    hessenberg(&mut h, Some(&mut z));
    schur(&mut h, Some(&mut z), opts)?;

    let eigenvalues: Vec<C64> = (0..n).map(|i| h[(i, i)]).collect();
    let y = triangular_eigenvectors(&h);
    let mut vectors = &z * &y;
    for (i, d) in scaling.iter().enumerate() {
        for j in 0..n {
            vectors[(i, j)] *= *d;
        }
    }
    for mut col in vectors.column_iter_mut() {
        let norm = col.norm();
        if norm > 0.0 {
            col /= C64::new(norm, 0.0);
        }
    }

    let a_norm = a.frobenius_norm();
    let tolerance = opts.residual_tol;
    for (j, lambda) in eigenvalues.iter().enumerate() {
        let v = vectors.column(j);
        let r = a.inner() * v - v * *lambda;
        let residual = r.norm();
        let bound = tolerance * a_norm.max(f64::MIN_POSITIVE);
        if residual > bound {
            return Err(Error::Residual {
                index: j,
                residual: residual / a_norm.max(f64::MIN_POSITIVE),
                tolerance,
            });
        }
    }

    let condition_estimate = match vectors.clone().try_inverse() {
        Some(inv) => vectors.norm() * inv.norm(),
        None => f64::INFINITY,
    };
    let mut es = EigenSystem {
        eigenvalues,
        vectors,
        condition_estimate,
    };
    es.reorder(opts.order);
    Ok(es)
}

/// Eigenvalues only, skipping Schur-vector accumulation and the residual check.
pub fn eigenvalues(a: &ComplexMatrix, order: EigenOrder) -> Result<Vec<C64>> {
    let mut h = a.inner().clone();
    balance(&mut h);
    hessenberg(&mut h, None);
    schur(&mut h, None, &EigOptions::ordered(order))?;
    let vals: Vec<C64> = (0..a.dim()).map(|i| h[(i, i)]).collect();
    let perm = sort_permutation(&vals, order);
    Ok(perm.into_iter().map(|i| vals[i]).collect())
}

/// Index permutation sorting `vals` by `order`; ties within 1e-9 of the
/// spectral radius fall back to ascending imaginary part.
pub fn sort_permutation(vals: &[C64], order: EigenOrder) -> Vec<usize> {
    let scale = vals.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let quantum = if scale > 0.0 { 1e-9 * scale } else { 1.0 };
    let key = |z: &C64| -> i64 {
        let primary = match order {
            EigenOrder::RealPartDescending => -z.re,
            EigenOrder::RealPartAscending => z.re,
            EigenOrder::MagnitudeDescending => -z.norm(),
        };
        (primary / quantum).round() as i64
    };
    let mut idx: Vec<usize> = (0..vals.len()).collect();
    idx.sort_by(|&a, &b| {
        key(&vals[a])
            .cmp(&key(&vals[b]))
            .then(vals[a].im.total_cmp(&vals[b].im))
    });
    idx
}

/// Radix-2 diagonal balancing in place; returns the scaling `d` such that
/// the balanced matrix is `D^-1 A D`.
fn balance(a: &mut DMatrix<C64>) -> Vec<f64> {
    let n = a.nrows();
    let mut d = vec![1.0; n];
    let mut converged = false;
    let mut rounds = 0;
    while !converged && rounds < 100 {
        converged = true;
        rounds += 1;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].l1_norm();
                    r += a[(i, j)].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / 2.0;
            while c < g {
                f *= 2.0;
                c *= 4.0;
            }
            g = r * 2.0;
            while c > g {
                f /= 2.0;
                c /= 4.0;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                d[i] *= f;
                let fc = C64::new(f, 0.0);
                for j in 0..n {
                    a[(i, j)] /= fc;
                    a[(j, i)] *= fc;
                }
            }
        }
    }
    d
}

/// Householder reduction to upper Hessenberg form, accumulating the
/// transformation into `q` when given.
fn hessenberg(a: &mut DMatrix<C64>, mut q: Option<&mut DMatrix<C64>>) {
    let n = a.nrows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let m = n - k - 1;
        let mut v: Vec<C64> = (0..m).map(|i| a[(k + 1 + i, k)]).collect();
        let xnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if v[0].norm() > 0.0 {
            v[0] / v[0].norm()
        } else {
            C64::new(1.0, 0.0)
        };
        v[0] += phase * xnorm;
        let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vv == 0.0 {
            continue;
        }
        let beta = 2.0 / vv;

        for j in k..n {
            let s: C64 = (0..m).map(|i| v[i].conj() * a[(k + 1 + i, j)]).sum();
            let s = s * beta;
            for i in 0..m {
                a[(k + 1 + i, j)] -= v[i] * s;
            }
        }
        apply_reflector_right(a, &v, beta, k + 1);
        if let Some(q) = q.as_deref_mut() {
            apply_reflector_right(q, &v, beta, k + 1);
        }
        for i in k + 2..n {
            a[(i, k)] = C64::new(0.0, 0.0);
        }
    }
}

fn apply_reflector_right(a: &mut DMatrix<C64>, v: &[C64], beta: f64, offset: usize) {
    let m = v.len();
    for i in 0..a.nrows() {
        let s: C64 = (0..m).map(|j| a[(i, offset + j)] * v[j]).sum();
        let s = s * beta;
        for j in 0..m {
            a[(i, offset + j)] -= s * v[j].conj();
        }
    }
}

/// Complex Givens pair `(c, s)` with `[c s; -conj(s) c] [f; g] = [r; 0]`.
fn givens(f: C64, g: C64) -> (f64, C64) {
    let ng = g.norm();
    if ng == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    let nf = f.norm();
    if nf == 0.0 {
        return (0.0, g.conj() / ng);
    }
    let norm = nf.hypot(ng);
    (nf / norm, (f / nf) * g.conj() / norm)
}

fn rotate_rows(a: &mut DMatrix<C64>, k: usize, c: f64, s: C64, cols: std::ops::Range<usize>) {
    for j in cols {
        let x = a[(k, j)];
        let y = a[(k + 1, j)];
        a[(k, j)] = x * c + s * y;
        a[(k + 1, j)] = -s.conj() * x + y * c;
    }
}

fn rotate_cols(a: &mut DMatrix<C64>, k: usize, c: f64, s: C64, rows: std::ops::Range<usize>) {
    for i in rows {
        let x = a[(i, k)];
        let y = a[(i, k + 1)];
        a[(i, k)] = x * c + s.conj() * y;
        a[(i, k + 1)] = -s * x + y * c;
    }
}

/// Reduce an upper Hessenberg matrix to upper triangular Schur form.
fn schur(h: &mut DMatrix<C64>, mut z: Option<&mut DMatrix<C64>>, opts: &EigOptions) -> Result<()> {
    let n = h.nrows();
    if n < 2 {
        return Ok(());
    }
    let hnorm = h.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if hnorm == 0.0 {
        return Ok(());
    }
    let mut hi = n - 1;
    let mut sweeps = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let mut s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if s == 0.0 {
                s = hnorm;
            }
            if h[(l, l - 1)].norm() <= EPS * s {
                h[(l, l - 1)] = C64::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            sweeps = 0;
            continue;
        }
        sweeps += 1;
        total += 1;
        if sweeps > opts.max_sweeps_per_eigenvalue {
            return Err(Error::NoConvergence {
                context: opts.context.clone(),
                iterations: total,
            });
        }

        let mu = if sweeps.is_multiple_of(10) {
            h[(hi, hi)] + 0.75 * h[(hi, hi - 1)].norm()
        } else {
            let a = h[(hi - 1, hi - 1)];
            let b = h[(hi - 1, hi)];
            let c = h[(hi, hi - 1)];
            let d = h[(hi, hi)];
            let half = (a - d) * 0.5;
            let disc = (half * half + b * c).sqrt();
            let mid = (a + d) * 0.5;
            let (m1, m2) = (mid + disc, mid - disc);
            if (m1 - d).norm() <= (m2 - d).norm() {
                m1
            } else {
                m2
            }
        };

        for k in l..hi {
            let (f, g) = if k == l {
                (h[(l, l)] - mu, h[(l + 1, l)])
            } else {
                (h[(k, k - 1)], h[(k + 1, k - 1)])
            };
            let (c, s) = givens(f, g);
            let start = if k == l { l } else { k - 1 };
            rotate_rows(h, k, c, s, start..n);
            if k > l {
                h[(k + 1, k - 1)] = C64::new(0.0, 0.0);
            }
            let last = (k + 2).min(hi);
            rotate_cols(h, k, c, s, 0..last + 1);
            if let Some(z) = z.as_deref_mut() {
                rotate_cols(z, k, c, s, 0..n);
            }
        }
    }
    Ok(())
}

/// Right eigenvectors of an upper-triangular matrix, one per column, by
/// back-substitution. Near-zero pivots are clamped so coalescing
/// eigenvalues still give a finite (nearly parallel) vector.
fn triangular_eigenvectors(t: &DMatrix<C64>) -> DMatrix<C64> {
    let n = t.nrows();
    let tnorm = t.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let smin = (EPS * tnorm).max(f64::MIN_POSITIVE * 1e10);
    let mut y = DMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = t[(k, k)];
        let mut col = vec![C64::new(0.0, 0.0); k + 1];
        col[k] = C64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut sum = C64::new(0.0, 0.0);
            for j in i + 1..=k {
                sum += t[(i, j)] * col[j];
            }
            let mut d = t[(i, i)] - lambda;
            if d.norm() < smin {
                d = C64::new(smin, 0.0);
            }
            col[i] = -sum / d;
            let big = col[i].norm();
            if big > 1e100 {
                for x in col[i..=k].iter_mut() {
                    *x /= big;
                }
            }
        }
        for (i, x) in col.into_iter().enumerate() {
            y[(i, k)] = x;
        }
    }
    y
}
