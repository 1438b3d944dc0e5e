//! Exact computation of the dynamical Lie algebra generated by a protocol's
//! Hamiltonians.
//!
//! Algebra elements are anti-Hermitian operators `i·H` with `H` a rational
//! linear combination of Hermitian Pauli strings. All arithmetic is exact
//! (arbitrary-precision rationals over a symplectic bit-mask representation),
//! so dimensions are integers with no tolerance: floating-point rank
//! decisions near a threshold would corrupt the dimension tables this crate
//! exists to verify.

pub mod closure;
pub mod parity;
pub mod pauli;
pub mod protocol;
pub mod report;
pub mod sum;

pub use closure::{closure, LieBasis};
pub use parity::parity_restricted_dimension;
pub use pauli::PauliTerm;
pub use protocol::{protocol_generators, Protocol};
pub use report::{expressibility_report, ExpressibilityReport};
pub use sum::OperatorSum;

#[derive(Debug, thiserror::Error)]
pub enum LieError {
    #[error("operator acts on {0} sites, expected {1}")]
    SiteMismatch(usize, usize),
    #[error("phase power {0} makes the coefficient non-real; not a valid i·H element")]
    NonHermitianClass(u8),
    #[error("dimension cap exceeded: basis grew past {0}")]
    DimensionCapExceeded(usize),
    #[error("generator does not commute with the parity string")]
    ParityNotConserved,
    #[error("empty generator set")]
    NoGenerators,
    #[error("lattice size {0} unsupported (need 2..=64)")]
    BadSize(usize),
}

pub type Result<T> = std::result::Result<T, LieError>;
