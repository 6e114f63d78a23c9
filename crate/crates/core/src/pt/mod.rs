//! Generalized PT machinery: symmetry checks, conjugate pairing, region
//! classification, real-basis construction and Hermitization.

mod classify;
mod hermitize;
mod real_basis;
mod symmetry;

pub use classify::{
    pair_and_classify, Evidence, PairedSpectrum, Region, RegionLabel, SpectrumOrdering,
    DEFAULT_PAIRING_TOL, NEAR_EXCEPTIONAL_TOL,
};
pub use hermitize::{hermitize, Hermitization};
pub use real_basis::{real_basis, RealBasis};
pub use symmetry::{bender_mannheim_test, check_pt, BenderMannheim, PtWitness, PT_TOL};
