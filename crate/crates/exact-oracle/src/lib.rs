//! Dense statevector reference implementation (L ≤ 12).
//!
//! Deliberately simple and slow: every operation here is an independent
//! route to the same physics as the covariance-matrix simulator, used to
//! calibrate sign conventions and to cross-validate `fgs-core` operation by
//! operation. Basis convention: site `j` (0-based) is bit `j` of the basis
//! index, bit value 0 = spin up (`Z = +1`), so `|↑…↑⟩` is index 0.

pub mod circuit;
pub mod covariance;
pub mod dense_op;
pub mod pauli;
pub mod spectra;
pub mod state;
pub mod validate;

pub use circuit::{dense_circuit, LayerAngles};
pub use covariance::covariance_from_state;
pub use dense_op::{quadratic_to_dense, DenseOperator};
pub use pauli::{jordan_wigner_majorana, PauliOp};
pub use spectra::{dense_ground_states, eigh, EigenPair};
pub use state::DenseState;

/// Hard cap on dense Hilbert-space size.
pub const MAX_DENSE_SITES: usize = 12;

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("lattice size {0} exceeds the dense cap of {MAX_DENSE_SITES} sites")]
    TooLarge(usize),
    #[error("majorana index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("state vector length {0} is not 2^L")]
    BadStateLength(usize),
    #[error("state norm deviates from 1 by {0:.3e}")]
    NotNormalized(f64),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error(transparent)]
    Fgs(#[from] fgs_core::FgsError),
}

pub type Result<T> = std::result::Result<T, OracleError>;
