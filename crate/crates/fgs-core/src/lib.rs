//! Covariance-matrix simulation of pure fermionic Gaussian states (FGS) on a
//! 1D lattice of `L` sites.
//!
//! Everything is phrased in terms of the `2L` Majorana operators obtained from
//! the Jordan-Wigner transformation. A quadratic Hamiltonian is stored as its
//! real antisymmetric coefficient matrix `h`, and a pure FGS as its real
//! antisymmetric covariance matrix `Γ` with `Γ·Γ = -I`. Time evolution,
//! energies, ground states, parities and overlaps are all closed-form linear
//! algebra on these `2L × 2L` matrices, so system sizes far beyond dense
//! statevector reach are cheap.
//!
//! Sign and scale conventions are subtle in this representation; they are
//! collected in [`conventions`] and pinned by regression tests against a dense
//! statevector reference.

pub mod builders;
pub mod conventions;
pub mod dynamics;
pub mod linalg;
pub mod overlap;
pub mod pfaffian;
pub mod spectral;
pub mod symmetry;
pub mod types;

pub use builders::{
    build_cluster, build_ising, build_long_range, random_local_quadratic,
    random_symmetric_quadratic,
};
pub use dynamics::{energy, energy_density, evolve, evolve_layer, Sublayer};
pub use overlap::{fidelity, parity};
pub use pfaffian::pfaffian;
pub use spectral::{ground_energy, ground_state_covariance};
pub use symmetry::{
    check_inversion_covariance, check_inversion_hamiltonian, check_translation_covariance,
    check_translation_hamiltonian,
};
pub use types::{
    BoundaryCondition, CovarianceMatrix, ParitySector, QuadraticHamiltonian, SymmetryClass,
};

/// Errors surfaced by the covariance-matrix layer.
#[derive(Debug, thiserror::Error)]
pub enum FgsError {
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("matrix dimension {0} is odd")]
    OddDimension(usize),
    #[error("matrix is not antisymmetric (max deviation {0:.3e})")]
    NotAntisymmetric(f64),
    #[error("degenerate ground space: quasiparticle energy {0:.3e} below tolerance")]
    DegenerateGroundSpace(f64),
    #[error("covariance matrix is not pure ({0})")]
    NotPure(String),
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("parameter out of range: {0}")]
    BadParameter(String),
}

pub type Result<T> = std::result::Result<T, FgsError>;
