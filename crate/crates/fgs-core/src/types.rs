//! Core domain types: quadratic Hamiltonians, covariance matrices and
//! symmetry descriptors.
//!
//! Lattice and Majorana indices are 1-based in documentation and mapped to
//! 0-based storage at the boundary of each operation.

use ndarray::Array2;

use crate::conventions::{ANTISYM_TOL, PURITY_TOL, Z_BLOCK_SIGN};
use crate::linalg;
use crate::{FgsError, Result};

/// Open vs periodic chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryCondition {
    Open,
    Periodic,
}

impl BoundaryCondition {
    pub fn is_periodic(self) -> bool {
        matches!(self, BoundaryCondition::Periodic)
    }
}

impl std::fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundaryCondition::Open => write!(f, "obc"),
            BoundaryCondition::Periodic => write!(f, "pbc"),
        }
    }
}

impl std::str::FromStr for BoundaryCondition {
    type Err = FgsError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "obc" | "open" => Ok(BoundaryCondition::Open),
            "pbc" | "periodic" => Ok(BoundaryCondition::Periodic),
            other => Err(FgsError::BadParameter(format!(
                "unknown boundary condition '{other}'"
            ))),
        }
    }
}

/// Fermionic parity sector label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParitySector {
    Even,
    Odd,
    Unrestricted,
}

impl ParitySector {
    /// The eigenvalue ±1, when restricted.
    pub fn sign(self) -> Option<i32> {
        match self {
            ParitySector::Even => Some(1),
            ParitySector::Odd => Some(-1),
            ParitySector::Unrestricted => None,
        }
    }
}

/// Symmetry descriptor of a Hamiltonian or state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetryClass {
    pub translation: bool,
    pub inversion: bool,
    pub parity_sector: ParitySector,
}

impl SymmetryClass {
    pub fn new(translation: bool, inversion: bool, parity_sector: ParitySector) -> Self {
        Self {
            translation,
            inversion,
            parity_sector,
        }
    }
}

fn validate_majorana_matrix(l: usize, m: &Array2<f64>, what: &'static str) -> Result<()> {
    let n = 2 * l;
    if l == 0 {
        return Err(FgsError::BadParameter(
            "lattice size must be positive".into(),
        ));
    }
    if m.nrows() != n || m.ncols() != n {
        return Err(FgsError::SizeMismatch(m.nrows(), n));
    }
    if !m.iter().all(|x| x.is_finite()) {
        return Err(FgsError::NonFinite(what));
    }
    let mut dev: f64 = 0.0;
    for j in 0..n {
        for k in j..n {
            dev = dev.max((m[(j, k)] + m[(k, j)]).abs());
        }
    }
    if dev > ANTISYM_TOL {
        return Err(FgsError::NotAntisymmetric(dev));
    }
    Ok(())
}

/// Exact antisymmetrization: `(M - Mᵀ)/2` with an exactly zero diagonal.
pub(crate) fn antisymmetrize(m: &mut Array2<f64>) {
    let n = m.nrows();
    for j in 0..n {
        m[(j, j)] = 0.0;
        for k in (j + 1)..n {
            let v = 0.5 * (m[(j, k)] - m[(k, j)]);
            m[(j, k)] = v;
            m[(k, j)] = -v;
        }
    }
}

/// A quadratic Hamiltonian `H = i Σ_{jk} h_jk γ_j γ_k` on `L` sites, stored as
/// its real antisymmetric `2L × 2L` coefficient matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian {
    size: usize,
    coeffs: Array2<f64>,
}

impl QuadraticHamiltonian {
    /// Validates dimensions, finiteness and antisymmetry (within 1e-12), then
    /// stores the exactly antisymmetrized matrix.
    pub fn new(size: usize, mut coeffs: Array2<f64>) -> Result<Self> {
        validate_majorana_matrix(size, &coeffs, "hamiltonian coefficients")?;
        antisymmetrize(&mut coeffs);
        Ok(Self { size, coeffs })
    }

    pub fn zeros(size: usize) -> Self {
        Self {
            size,
            coeffs: Array2::zeros((2 * size, 2 * size)),
        }
    }

    /// Accumulates weights into `(a, b)` / `(b, a)` pairs of 0-based Majorana
    /// indices.
    pub fn from_terms(size: usize, terms: &[(usize, usize, f64)]) -> Result<Self> {
        let n = 2 * size;
        let mut m = Array2::zeros((n, n));
        for &(a, b, w) in terms {
            if a >= n || b >= n || a == b {
                return Err(FgsError::BadParameter(format!(
                    "majorana pair ({a}, {b}) out of range for 2L = {n}"
                )));
            }
            if !w.is_finite() {
                return Err(FgsError::NonFinite("term weight"));
            }
            m[(a, b)] += w;
            m[(b, a)] -= w;
        }
        Ok(Self { size, coeffs: m })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Majorana dimension `2L`.
    pub fn dim(&self) -> usize {
        2 * self.size
    }

    pub fn coeffs(&self) -> &Array2<f64> {
        &self.coeffs
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            size: self.size,
            coeffs: &self.coeffs * factor,
        }
    }
}

/// Covariance matrix `Γ_jk = (i/2)⟨[γ_j, γ_k]⟩` of a fermionic state.
///
/// Antisymmetry is enforced on construction. Purity (`Γ·Γ = -I`) is a
/// property of Gaussian pure states and is *checked*, never silently
/// restored: [`CovarianceMatrix::purity_deviation`] and
/// [`CovarianceMatrix::singular_value_deviation`] expose the drift.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    size: usize,
    gamma: Array2<f64>,
}

impl CovarianceMatrix {
    pub fn new(size: usize, mut gamma: Array2<f64>) -> Result<Self> {
        validate_majorana_matrix(size, &gamma, "covariance matrix")?;
        antisymmetrize(&mut gamma);
        Ok(Self { size, gamma })
    }

    /// Covariance of the Z-polarized product state `|↑…↑⟩`: 2×2 blocks on
    /// Majorana pairs `(2j-1, 2j)` with the frozen block sign.
    pub fn z_polarized(size: usize) -> Self {
        let n = 2 * size;
        let mut g = Array2::zeros((n, n));
        for j in 0..size {
            g[(2 * j, 2 * j + 1)] = Z_BLOCK_SIGN;
            g[(2 * j + 1, 2 * j)] = -Z_BLOCK_SIGN;
        }
        Self { size, gamma: g }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        2 * self.size
    }

    pub fn gamma(&self) -> &Array2<f64> {
        &self.gamma
    }

    pub(crate) fn gamma_mut(&mut self) -> &mut Array2<f64> {
        &mut self.gamma
    }

    /// Max-abs entry of `Γ·Γ + I`; zero for a pure state.
    pub fn purity_deviation(&self) -> f64 {
        let sq = self.gamma.dot(&self.gamma);
        let n = self.dim();
        let mut dev: f64 = 0.0;
        for j in 0..n {
            for k in 0..n {
                let target = if j == k { -1.0 } else { 0.0 };
                dev = dev.max((sq[(j, k)] - target).abs());
            }
        }
        dev
    }

    /// Max deviation of the singular values of `Γ` from 1 (equivalent purity
    /// statement).
    pub fn singular_value_deviation(&self) -> f64 {
        // singular values are the square roots of the eigenvalues of -Γ·Γ
        let mut sq = self.gamma.dot(&self.gamma);
        sq.mapv_inplace(|x| -x);
        let eig = linalg::symmetric_eigenvalues(&sq);
        eig.iter()
            .map(|&v| (v.max(0.0).sqrt() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_pure(&self) -> bool {
        self.purity_deviation() <= PURITY_TOL
    }

    pub fn ensure_pure(&self) -> Result<()> {
        let dev = self.purity_deviation();
        if dev > PURITY_TOL {
            return Err(FgsError::NotPure(format!(
                "purity deviation {dev:.3e} exceeds {PURITY_TOL:.1e}"
            )));
        }
        Ok(())
    }

    /// Drift control after orthogonal conjugations: restore exact
    /// antisymmetry. Purity drift is monitored, not corrected.
    pub fn reantisymmetrize(&mut self) {
        antisymmetrize(&mut self.gamma);
    }
}
