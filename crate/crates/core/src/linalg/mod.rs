//! Dense complex linear algebra.

mod charpoly;
mod eig;
mod matrix;

pub use charpoly::{char_poly, poly_from_roots};
pub use eig::{eig, eig_with, eigenvalues, sort_permutation, EigOptions, EigenOrder, EigenSystem};
pub use matrix::{ComplexMatrix, C64};

/// Hermitian eigendecomposition `(values ascending, unitary vectors)`.
pub fn hermitian_eigen(a: &ComplexMatrix) -> (Vec<f64>, nalgebra::DMatrix<C64>) {
    let se = nalgebra::SymmetricEigen::new(a.inner().clone());
    let mut idx: Vec<usize> = (0..a.dim()).collect();
    idx.sort_by(|&i, &j| se.eigenvalues[i].total_cmp(&se.eigenvalues[j]));
    let values = idx.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vectors = se.eigenvectors.clone();
    for (dst, &src) in idx.iter().enumerate() {
        vectors.set_column(dst, &se.eigenvectors.column(src));
    }
    (values, vectors)
}
