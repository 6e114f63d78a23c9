//! Character-basis Hamiltonians for U(1), SU(2) and SU(3) with heavy quarks
//! at finite density.

mod hamiltonian;
mod irreps;
mod trajectory;

pub use hamiltonian::{build_gauge_hamiltonian, BoundaryCondition, GaugeSpec};
pub use irreps::{
    character_matrices, irrep_basis, CharacterMatrices, Group, IrrepBasis, IrrepLabel, TruncatedTerm,
    MAX_BASIS,
};
pub use trajectory::{eigen_trajectory, Trajectory, TrajectoryOptions, TrajectoryPoint, DRIFT_TOL};
