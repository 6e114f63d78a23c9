//! Quantities measured from a transfer matrix or Hamiltonian.

mod correlator;
mod decay;
mod lee_yang;
mod partition;
mod propagator;
mod scan;

pub use correlator::{one_point, two_point, CorrelatorMethod, CorrelatorSeries};
pub use decay::{fit_decay, DecayClass, DecayFit};
pub use lee_yang::{
    lee_yang_zeros, synthetic_pair_bundle, FreeEnergy, FreeEnergySet, LeeYangResult, ParameterPath,
    PredictedZero,
};
pub use partition::{partition_function, PartitionFunction};
pub use propagator::Propagator;
pub use scan::{Axis, ScanCell, ScanFamily, ScanGrid};

/// Relative imaginary residue tolerated in quantities that must be real.
pub const REALITY_TOL: f64 = 1e-9;

/// `|Z| / sum |lambda|^L` below which correlators are refused.
pub const PARTITION_ZERO_TOL: f64 = 1e-12;
