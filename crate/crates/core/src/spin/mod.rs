//! Transfer matrices of one-dimensional classical spin chains.

mod annni;
mod chiral;
mod zn;

pub use annni::{annni_disorder_line, annni_twisted_discriminant, build_annni, AnnniBundles, AnnniSpec};
pub use chiral::{build_chiral_potts, ChiralPottsSpec};
pub use zn::{build_zn_transfer, fourier_conjugate, zn_fourier, zn_phase, ZnSpec};
