//! Dense Hermitian operators assembled from Pauli sums.

use faer::complex_native::c64;
use faer::Mat;
use num_complex::Complex64;

use fgs_core::QuadraticHamiltonian;

use crate::pauli::{jordan_wigner_majorana, parity_op, PauliOp};
use crate::state::DenseState;
use crate::{OracleError, Result, MAX_DENSE_SITES};

/// A Hermitian operator as a weighted Pauli sum, expandable to a dense
/// matrix on demand. Coefficients are complex so intermediate products stay
/// closed; Hermiticity is checked where claimed.
#[derive(Debug, Clone)]
pub struct DenseOperator {
    pub sites: usize,
    pub terms: Vec<(Complex64, PauliOp)>,
}

impl DenseOperator {
    pub fn new(sites: usize, terms: Vec<(Complex64, PauliOp)>) -> Result<Self> {
        if sites > MAX_DENSE_SITES {
            return Err(OracleError::TooLarge(sites));
        }
        Ok(Self { sites, terms })
    }

    pub fn apply(&self, state: &DenseState) -> DenseState {
        let mut out = vec![Complex64::new(0.0, 0.0); state.amps.len()];
        for (coeff, op) in &self.terms {
            let piece = op.apply(state);
            for (o, p) in out.iter_mut().zip(piece.amps.iter()) {
                *o += coeff * p;
            }
        }
        DenseState {
            sites: state.sites,
            amps: out,
        }
    }

    pub fn expectation(&self, state: &DenseState) -> Complex64 {
        self.terms
            .iter()
            .map(|(c, op)| c * op.expectation(state))
            .sum()
    }

    /// Expand to a dense matrix (faer layout, for eigendecompositions).
    pub fn to_matrix(&self) -> Mat<c64> {
        let dim = 1usize << self.sites;
        let mut m = Mat::<c64>::zeros(dim, dim);
        for (coeff, op) in &self.terms {
            for s in 0..dim {
                let sign = if ((s as u64 & op.z).count_ones() & 1) == 0 {
                    1.0
                } else {
                    -1.0
                };
                let v = coeff * op.phase * sign;
                let r = s ^ op.x as usize;
                let cur = m.read(r, s);
                m.write(r, s, c64::new(cur.re + v.re, cur.im + v.im));
            }
        }
        m
    }

    /// Max-abs deviation from Hermiticity of the dense expansion.
    pub fn hermiticity_deviation(&self) -> f64 {
        let m = self.to_matrix();
        let dim = m.nrows();
        let mut dev: f64 = 0.0;
        for r in 0..dim {
            for c in r..dim {
                let a = m.read(r, c);
                let b = m.read(c, r);
                dev = dev.max(((a.re - b.re).powi(2) + (a.im + b.im).powi(2)).sqrt());
            }
        }
        dev
    }

    /// Max-abs entry of the commutator with the parity string.
    pub fn parity_commutator_deviation(&self) -> f64 {
        let p = parity_op(self.sites);
        let mut dev: f64 = 0.0;
        for (c, op) in &self.terms {
            let pq = p.mul(op);
            let qp = op.mul(&p);
            dev = dev.max(((pq.phase - qp.phase) * c).norm());
        }
        dev
    }
}

/// Dense form of a quadratic Hamiltonian `H = i Σ_{jk} h_jk γ_j γ_k`.
pub fn quadratic_to_dense(h: &QuadraticHamiltonian) -> Result<DenseOperator> {
    let l = h.size();
    if l > MAX_DENSE_SITES {
        return Err(OracleError::TooLarge(l));
    }
    let c = h.coeffs();
    let mut terms = Vec::new();
    for j in 0..2 * l {
        for k in (j + 1)..2 * l {
            let w = c[(j, k)];
            if w == 0.0 {
                continue;
            }
            let gj = jordan_wigner_majorana(j + 1, l)?;
            let gk = jordan_wigner_majorana(k + 1, l)?;
            // i (h_jk γ_j γ_k + h_kj γ_k γ_j) = 2 i h_jk γ_j γ_k
            let prod = gj.mul(&gk);
            terms.push((
                Complex64::new(0.0, 2.0 * w) * prod.phase,
                PauliOp {
                    phase: Complex64::new(1.0, 0.0),
                    ..prod
                },
            ));
        }
    }
    DenseOperator::new(l, terms)
}

/// Dense spin Hamiltonians built directly from Pauli strings — an
/// independent route used to pin the builders' sign conventions.
pub mod spin_models {
    use super::*;
    use fgs_core::BoundaryCondition;

    /// `X_j Z…Z X_{j+r+1}` with sites mod L (0-based start site `j`).
    fn string_term(l: usize, j: usize, r: usize) -> PauliOp {
        let mut x: u64 = 0;
        let mut z: u64 = 0;
        x |= 1 << j;
        x |= 1 << ((j + r + 1) % l);
        for step in 1..=r {
            z |= 1 << ((j + step) % l);
        }
        PauliOp {
            x,
            z,
            phase: Complex64::new(1.0, 0.0),
        }
    }

    fn z_term(j: usize) -> PauliOp {
        PauliOp {
            x: 0,
            z: 1 << j,
            phase: Complex64::new(1.0, 0.0),
        }
    }

    pub fn ising(l: usize, bc: BoundaryCondition) -> Result<DenseOperator> {
        let mut terms = Vec::new();
        for j in 0..l {
            terms.push((Complex64::new(-1.0, 0.0), z_term(j)));
        }
        let bonds = if bc.is_periodic() { l } else { l - 1 };
        for j in 0..bonds {
            terms.push((Complex64::new(-1.0, 0.0), string_term(l, j, 0)));
        }
        DenseOperator::new(l, terms)
    }

    pub fn long_range(l: usize, alpha: f64) -> Result<DenseOperator> {
        let mut terms = Vec::new();
        for j in 0..l {
            terms.push((Complex64::new(-1.0, 0.0), z_term(j)));
        }
        for r in 0..=(l - 2) {
            let c = -(-alpha * r as f64).exp();
            for j in 0..l {
                terms.push((Complex64::new(c, 0.0), string_term(l, j, r)));
            }
        }
        DenseOperator::new(l, terms)
    }

    pub fn cluster(l: usize, k: usize) -> Result<DenseOperator> {
        let mut terms = Vec::new();
        for j in 0..l {
            terms.push((Complex64::new(-1.0, 0.0), z_term(j)));
            terms.push((Complex64::new(-1.0, 0.0), string_term(l, j, k)));
        }
        DenseOperator::new(l, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn zero_hamiltonian_gives_zero_operator() {
        let h = QuadraticHamiltonian::zeros(2);
        let d = quadratic_to_dense(&h).unwrap();
        assert!(d.terms.is_empty());
    }

    #[test]
    fn single_pair_reduces_to_z() {
        // L=1, h_12 = -1/2 carries Z_1 with coefficient +1:
        // i·(-1/2)(γ1γ2 - γ2γ1) = -i γ1γ2 = -i·(iZ) = Z
        let h = QuadraticHamiltonian::new(1, array![[0.0, -0.5], [0.5, 0.0]]).unwrap();
        let d = quadratic_to_dense(&h).unwrap();
        let m = d.to_matrix();
        assert!((m.read(0, 0).re - 1.0).abs() < 1e-15);
        assert!((m.read(1, 1).re + 1.0).abs() < 1e-15);
        assert!(m.read(0, 1).re.abs() + m.read(1, 0).re.abs() < 1e-15);
    }

    #[test]
    fn dense_quadratics_are_hermitian_and_parity_even() {
        for seed in 0..3 {
            let h = fgs_core::random_symmetric_quadratic(4, seed);
            let d = quadratic_to_dense(&h).unwrap();
            assert!(d.hermiticity_deviation() < 1e-12);
            assert!(d.parity_commutator_deviation() < 1e-12);
        }
    }
}
