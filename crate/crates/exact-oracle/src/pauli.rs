//! Matrix-free Pauli-string operators and the Jordan-Wigner Majoranas.

use num_complex::Complex64;

use crate::state::DenseState;
use crate::{OracleError, Result};

/// `phase · X^x Z^z` acting as `|s⟩ ↦ phase · (-1)^{|s ∧ z|} |s ⊕ x⟩`.
/// A `Y_j` is `i·X_j Z_j`, its `i` folded into `phase`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliOp {
    pub x: u64,
    pub z: u64,
    pub phase: Complex64,
}

impl PauliOp {
    pub fn identity() -> Self {
        Self {
            x: 0,
            z: 0,
            phase: Complex64::new(1.0, 0.0),
        }
    }

    /// Operator product `self · other`.
    pub fn mul(&self, other: &PauliOp) -> PauliOp {
        // X^x1 Z^z1 X^x2 Z^z2 = (-1)^{|z1 ∧ x2|} X^{x1⊕x2} Z^{z1⊕z2}
        let sign = if ((self.z & other.x).count_ones() & 1) == 0 {
            1.0
        } else {
            -1.0
        };
        PauliOp {
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase: self.phase * other.phase * sign,
        }
    }

    pub fn apply(&self, state: &DenseState) -> DenseState {
        let dim = state.amps.len();
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for (s, &a) in state.amps.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let sign = if ((s as u64 & self.z).count_ones() & 1) == 0 {
                1.0
            } else {
                -1.0
            };
            out[s ^ self.x as usize] += self.phase * sign * a;
        }
        DenseState {
            sites: state.sites,
            amps: out,
        }
    }

    /// `⟨ψ| self |ψ⟩`.
    pub fn expectation(&self, state: &DenseState) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (s, &a) in state.amps.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let sign = if ((s as u64 & self.z).count_ones() & 1) == 0 {
                1.0
            } else {
                -1.0
            };
            acc += state.amps[s ^ self.x as usize].conj() * self.phase * sign * a;
        }
        acc
    }
}

/// Jordan-Wigner Majorana `γ_idx` (1-based, `1..=2L`):
/// `γ_{2j-1} = Z…Z X_j`, `γ_{2j} = Z…Z Y_j`.
pub fn jordan_wigner_majorana(idx: usize, l: usize) -> Result<PauliOp> {
    if idx == 0 || idx > 2 * l {
        return Err(OracleError::IndexOutOfRange(idx, 2 * l));
    }
    let site = (idx - 1) / 2; // 0-based
    let string: u64 = (1u64 << site) - 1; // Z on sites 0..site-1
    if idx % 2 == 1 {
        Ok(PauliOp {
            x: 1 << site,
            z: string,
            phase: Complex64::new(1.0, 0.0),
        })
    } else {
        // Y = i X Z
        Ok(PauliOp {
            x: 1 << site,
            z: string | (1 << site),
            phase: Complex64::new(0.0, 1.0),
        })
    }
}

/// The parity string `Π_j Z_j`.
pub fn parity_op(l: usize) -> PauliOp {
    PauliOp {
        x: 0,
        z: (1u64 << l) - 1,
        phase: Complex64::new(1.0, 0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op_matrix(op: &PauliOp, l: usize) -> Vec<Vec<Complex64>> {
        let dim = 1 << l;
        let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for c in 0..dim {
            let e = DenseState::basis(l, c).unwrap();
            let col = op.apply(&e);
            for r in 0..dim {
                m[r][c] = col.amps[r];
            }
        }
        m
    }

    #[test]
    fn single_site_majoranas() {
        // L=1: γ1 = X, γ2 = Y
        let g1 = jordan_wigner_majorana(1, 1).unwrap();
        let g2 = jordan_wigner_majorana(2, 1).unwrap();
        let mx = op_matrix(&g1, 1);
        assert_eq!(mx[0][1], Complex64::new(1.0, 0.0));
        assert_eq!(mx[1][0], Complex64::new(1.0, 0.0));
        let my = op_matrix(&g2, 1);
        assert_eq!(my[0][1], Complex64::new(0.0, -1.0));
        assert_eq!(my[1][0], Complex64::new(0.0, 1.0));
    }

    #[test]
    fn majoranas_square_to_identity_and_anticommute() {
        let l = 3;
        for j in 1..=2 * l {
            let gj = jordan_wigner_majorana(j, l).unwrap();
            let sq = gj.mul(&gj);
            assert_eq!(sq.x, 0);
            assert_eq!(sq.z, 0);
            assert!(
                (sq.phase - Complex64::new(1.0, 0.0)).norm() < 1e-15,
                "γ_{j}²"
            );
            for k in (j + 1)..=2 * l {
                let gk = jordan_wigner_majorana(k, l).unwrap();
                let ab = gj.mul(&gk);
                let ba = gk.mul(&gj);
                assert_eq!(ab.x, ba.x);
                assert_eq!(ab.z, ba.z);
                assert!(
                    (ab.phase + ba.phase).norm() < 1e-15,
                    "γ_{j} γ_{k} anticommutation"
                );
            }
        }
    }

    #[test]
    fn index_bounds_checked() {
        assert!(jordan_wigner_majorana(0, 2).is_err());
        assert!(jordan_wigner_majorana(5, 2).is_err());
    }
}
