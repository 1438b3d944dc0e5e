//! Fermionic parity and state overlaps through Pfaffians.

use crate::conventions::{parity_prefactor, PARITY_PF_TOL};
use crate::pfaffian::pfaffian;
use crate::types::CovarianceMatrix;
use crate::{FgsError, Result};

/// Eigenvalue of the fermionic parity `P = Π_j Z_j` on a pure state:
/// `(-1)^L · sign(Pf(Γ))`.
pub fn parity(gamma: &CovarianceMatrix) -> Result<i32> {
    let pf = pfaffian(gamma.gamma())?;
    if pf.abs() < PARITY_PF_TOL {
        return Err(FgsError::NotPure(format!(
            "|Pf(Γ)| = {:.3e} below {PARITY_PF_TOL:.1e}",
            pf.abs()
        )));
    }
    let signed = parity_prefactor(gamma.size()) * pf;
    Ok(if signed > 0.0 { 1 } else { -1 })
}

/// Squared overlap `|⟨ψ1|ψ2⟩|²` of two pure fermionic Gaussian states:
/// `2^{-L} |Pf(Γ1 + Γ2)|`.
pub fn fidelity(g1: &CovarianceMatrix, g2: &CovarianceMatrix) -> Result<f64> {
    if g1.size() != g2.size() {
        return Err(FgsError::SizeMismatch(g1.size(), g2.size()));
    }
    g1.ensure_pure()?;
    g2.ensure_pure()?;
    let sum = g1.gamma() + g2.gamma();
    let pf = pfaffian(&sum)?;
    let f = pf.abs() * 0.5f64.powi(g1.size() as i32);
    Ok(f.min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conventions::parity_prefactor;
    use ndarray::Array2;

    /// Product state with site `flip` pointing down, the rest up.
    fn one_flipped(l: usize, flip: usize) -> CovarianceMatrix {
        let mut g = Array2::zeros((2 * l, 2 * l));
        for j in 0..l {
            let s = if j == flip { 1.0 } else { -1.0 };
            g[(2 * j, 2 * j + 1)] = s;
            g[(2 * j + 1, 2 * j)] = -s;
        }
        CovarianceMatrix::new(l, g).unwrap()
    }

    #[test]
    fn self_fidelity_is_one() {
        for l in 1..5 {
            let g = CovarianceMatrix::z_polarized(l);
            assert!((fidelity(&g, &g).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn opposite_parity_states_are_orthogonal() {
        for l in 2..5 {
            let up = CovarianceMatrix::z_polarized(l);
            let flipped = one_flipped(l, 0);
            assert_eq!(parity(&up).unwrap(), 1);
            assert_eq!(parity(&flipped).unwrap(), -1);
            assert!(fidelity(&up, &flipped).unwrap() < 1e-12);
        }
    }

    #[test]
    fn parity_counts_flips() {
        let g = one_flipped(4, 2);
        assert_eq!(parity(&g).unwrap(), -1);
        // two flips restore even parity
        let mut m = g.gamma().clone();
        m[(0, 1)] = 1.0;
        m[(1, 0)] = -1.0;
        let g2 = CovarianceMatrix::new(4, m).unwrap();
        assert_eq!(parity(&g2).unwrap(), 1);
    }

    #[test]
    fn parity_rejects_impure_input() {
        let g = CovarianceMatrix::new(2, Array2::zeros((4, 4))).unwrap();
        assert!(matches!(parity(&g), Err(FgsError::NotPure(_))));
    }

    #[test]
    fn prefactor_alternates() {
        assert_eq!(parity_prefactor(2), 1.0);
        assert_eq!(parity_prefactor(3), -1.0);
    }
}
