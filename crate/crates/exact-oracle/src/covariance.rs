//! Covariance-matrix extraction from dense states.

use ndarray::Array2;

use fgs_core::CovarianceMatrix;

use crate::pauli::jordan_wigner_majorana;
use crate::state::DenseState;
use crate::Result;

/// `Γ_jk = (i/2)⟨ψ|[γ_j, γ_k]|ψ⟩`, real and antisymmetric for any state;
/// additionally satisfies `Γ² = -I` exactly when `ψ` is a pure Gaussian
/// state (the purity check on the result is the caller's business).
pub fn covariance_from_state(psi: &DenseState) -> Result<CovarianceMatrix> {
    let l = psi.sites;
    let n = 2 * l;
    // Precompute γ_a |ψ⟩ for all Majoranas.
    let mut gpsi = Vec::with_capacity(n);
    for a in 1..=n {
        let g = jordan_wigner_majorana(a, l)?;
        gpsi.push(g.apply(psi));
    }
    let mut gamma = Array2::zeros((n, n));
    for j in 0..n {
        for k in (j + 1)..n {
            // ⟨ψ|γ_j γ_k|ψ⟩ = ⟨γ_j ψ|γ_k ψ⟩ (Majoranas are Hermitian),
            // and Γ_jk = Re(i⟨γ_j γ_k⟩) for j ≠ k.
            let e = gpsi[j].inner(&gpsi[k])?;
            let v = -e.im;
            gamma[(j, k)] = v;
            gamma[(k, j)] = -v;
        }
    }
    Ok(CovarianceMatrix::new(l, gamma)?)
}
