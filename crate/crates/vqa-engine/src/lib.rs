//! Variational circuits over covariance matrices: the alternating-layer
//! protocols, their shifted-energy-density cost, exact reverse-sweep
//! gradients, and a BFGS optimizer with strong-Wolfe line search whose
//! per-iteration diagnostics drive the experiment harness.

pub mod cost;
pub mod gradient;
pub mod init;
pub mod optimizer;
pub mod protocol;
pub mod serialize;

pub use cost::{prepare, CostFunction};
pub use init::{random_initial_theta, sum_of_angles, ANGLE_PERIOD, DEFAULT_INIT_SCALE};
pub use optimizer::{
    bfgs_minimize, bfgs_minimize_fn, bfgs_minimize_observed, BfgsOptions, IterRecord,
    OptimizationTrace, Verdict,
};
pub use protocol::{ParameterVector, ProtocolFamily, ProtocolSpec};

#[derive(Debug, thiserror::Error)]
pub enum VqaError {
    #[error("parameter vector has length {0}, protocol expects {1}")]
    LayoutMismatch(usize, usize),
    #[error("non-finite value encountered: {0}")]
    NonFinite(&'static str),
    #[error("initial state parity {0} does not match target ground-state parity {1}; the target is unreachable")]
    ParityMismatch(i32, i32),
    #[error("supplied ground energy {supplied} deviates from the recomputed {computed}")]
    GroundEnergyMismatch { supplied: f64, computed: f64 },
    #[error("protocol requires L >= 2 and p >= 1, got L = {0}, p = {1}")]
    BadProtocol(usize, usize),
    #[error(transparent)]
    Fgs(#[from] fgs_core::FgsError),
}

pub type Result<T> = std::result::Result<T, VqaError>;
