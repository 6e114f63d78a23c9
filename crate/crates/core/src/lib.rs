//! Spectral analysis of PT-symmetric transfer matrices and Hamiltonians.
//!
//! The crate builds the matrices of one-dimensional Z(N) chains with a complex
//! field, the chiral Potts chain, the ANNNI chain and character-basis gauge
//! Hamiltonians for U(1), SU(2) and SU(3). It diagonalizes them, sorts their
//! spectra into regions Ia/Ib/II/III, and measures partition functions,
//! correlators, phase diagrams and partition-function zeros. A brute-force
//! enumeration oracle cross-checks the transfer-matrix results at small size.

pub mod error;
pub mod exec;
pub mod gauge;
pub mod linalg;
pub mod model;
pub mod observables;
pub mod oracle;
pub mod pt;
pub mod spin;

/// Library version recorded in CLI metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use error::{Error, Result};
pub use exec::Exec;
pub use linalg::{char_poly, eig, eig_with, ComplexMatrix, EigOptions, EigenOrder, EigenSystem, C64};
pub use model::{MatrixKind, ModelBundle, ModelSpec};
pub use pt::{
    bender_mannheim_test, check_pt, hermitize, pair_and_classify, real_basis, PairedSpectrum,
    PtWitness, Region, RegionLabel, SpectrumOrdering,
};
