use crate::linalg::C64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-finite entry in {0}")]
    NonFinite(String),

    #[error("eigensolver did not converge on {context} after {iterations} QR sweeps")]
    NoConvergence { context: String, iterations: usize },

    #[error("eigenpair {index} residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    Residual {
        index: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("overflow: {0}; rescale the matrix before retrying")]
    Overflow(String),

    #[error("parity operator is not an involution: ||P^2 - 1|| = {defect:.3e}")]
    NotInvolution { defect: f64 },

    #[error("parity operator is not unitary: ||P P^+ - 1|| = {defect:.3e}")]
    NotUnitary { defect: f64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("eigenvalue {value} has no complex-conjugate partner (input is not PT-symmetric)")]
    UnpairedEigenvalue { value: C64 },

    #[error("PT symmetry is broken: complex pair {pair} present")]
    BrokenPt { pair: C64 },

    #[error("spectrum is degenerate (minimum gap {gap:.3e}); possible Jordan block")]
    DegenerateSpectrum { gap: f64 },

    #[error("partition function vanishes (|Z| / sum|lambda|^L = {ratio:.3e}); correlators are ill-defined here")]
    PartitionZero { ratio: f64 },

    #[error("{what} is not real: imaginary residue {residual:.3e}")]
    NotReal { what: String, residual: f64 },

    #[error("operator `{0}` is not attached to the model")]
    MissingOperator(String),

    #[error("irrep basis would hold {size} irreps (limit 10000)")]
    BasisTooLarge { size: usize },

    #[error("truncation did not stabilize at beta_mu = {beta_mu}: drift {drift:.3e} at cutoff {cutoff}")]
    NonStabilizing {
        beta_mu: f64,
        drift: f64,
        cutoff: usize,
    },

    #[error("enumeration needs {configs} configurations, above the cap of {cap}")]
    SizeCap { configs: f64, cap: f64 },

    #[error("could not build a PT-invariant basis vector after trying every phase")]
    RealBasisFailed,
}
