//! Translation and lattice-inversion predicates for Majorana matrices.
//!
//! Translation by one site shifts Majorana indices by 2. On the periodic
//! ring the shift is *antiperiodic*: an index wrapping past `2L` flips the
//! sign of the entry. This is the convention under which the even-parity
//! sector of a translation-invariant spin chain (what the builders produce,
//! and what circuits starting from the Z-polarized state explore) is
//! invariant; see `CONVENTIONS.md`. Inversion maps site `j ↦ L-j+1`, which
//! on Majorana labels is `a ↦ 2L+1-a` together with an alternating sign:
//! `M_jk = (-1)^{j-k+1} M_{2L-k+1, 2L-j+1}` (1-based). Both predicates use
//! the shared tolerance [`crate::conventions::SYMMETRY_TOL`].

use ndarray::Array2;

use crate::conventions::SYMMETRY_TOL;
use crate::types::{CovarianceMatrix, ParitySector, QuadraticHamiltonian, SymmetryClass};

fn translation_ok(m: &Array2<f64>) -> bool {
    let n = m.nrows();
    let l = n / 2;
    for shift in 1..l {
        let s = 2 * shift;
        for j in 0..n {
            for k in 0..n {
                let sj = if j + s >= n { -1.0 } else { 1.0 };
                let sk = if k + s >= n { -1.0 } else { 1.0 };
                let dev = (m[(j, k)] - sj * sk * m[((j + s) % n, (k + s) % n)]).abs();
                if dev > SYMMETRY_TOL {
                    return false;
                }
            }
        }
    }
    true
}

fn inversion_ok(m: &Array2<f64>) -> bool {
    let n = m.nrows();
    for j in 0..n {
        for k in 0..n {
            // 0-based form of M_jk = (-1)^{j-k+1} M_{2L-k+1, 2L-j+1}
            let sign = if (j as i64 - k as i64).rem_euclid(2) == 0 {
                -1.0
            } else {
                1.0
            };
            let dev = (m[(j, k)] - sign * m[(n - 1 - k, n - 1 - j)]).abs();
            if dev > SYMMETRY_TOL {
                return false;
            }
        }
    }
    true
}

pub fn check_translation_hamiltonian(h: &QuadraticHamiltonian) -> bool {
    translation_ok(h.coeffs())
}

pub fn check_translation_covariance(g: &CovarianceMatrix) -> bool {
    translation_ok(g.gamma())
}

pub fn check_inversion_hamiltonian(h: &QuadraticHamiltonian) -> bool {
    inversion_ok(h.coeffs())
}

pub fn check_inversion_covariance(g: &CovarianceMatrix) -> bool {
    inversion_ok(g.gamma())
}

/// Symmetry descriptor of a Hamiltonian (parity sector is always
/// unrestricted for the coefficient matrix itself).
pub fn classify_hamiltonian(h: &QuadraticHamiltonian) -> SymmetryClass {
    SymmetryClass::new(
        check_translation_hamiltonian(h),
        check_inversion_hamiltonian(h),
        ParitySector::Unrestricted,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_ising, random_symmetric_quadratic};
    use crate::types::BoundaryCondition;

    #[test]
    fn ising_pbc_is_fully_symmetric() {
        let h = build_ising(6, BoundaryCondition::Periodic).unwrap();
        assert!(check_translation_hamiltonian(&h));
        assert!(check_inversion_hamiltonian(&h));
    }

    #[test]
    fn ising_obc_breaks_translation_but_not_inversion() {
        let h = build_ising(6, BoundaryCondition::Open).unwrap();
        assert!(!check_translation_hamiltonian(&h));
        assert!(check_inversion_hamiltonian(&h));
    }

    #[test]
    fn random_symmetric_passes_both() {
        for seed in 0..5 {
            let h = random_symmetric_quadratic(5, seed);
            assert!(check_translation_hamiltonian(&h), "seed {seed}");
            assert!(check_inversion_hamiltonian(&h), "seed {seed}");
        }
    }

    #[test]
    fn unsymmetrized_noise_fails_translation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let l = 4;
        let mut m = ndarray::Array2::zeros((2 * l, 2 * l));
        for j in 0..2 * l {
            for k in (j + 1)..2 * l {
                let v: f64 = rng.gen_range(-1.0..1.0);
                m[(j, k)] = v;
                m[(k, j)] = -v;
            }
        }
        let h = QuadraticHamiltonian::new(l, m).unwrap();
        assert!(!check_translation_hamiltonian(&h));
    }

    #[test]
    fn z_polarized_covariance_is_symmetric() {
        let g = CovarianceMatrix::z_polarized(4);
        assert!(check_translation_covariance(&g));
        assert!(check_inversion_covariance(&g));
    }
}
