//! Spectral decomposition of quadratic Hamiltonians: ground states, ground
//! energies and exactly-orthogonal evolution operators.
//!
//! For a real antisymmetric `h`, the matrix `i·h` is Hermitian with
//! eigenvalues in ± pairs (the quasiparticle structure). All functions here
//! go through that single Hermitian eigendecomposition.

use ndarray::Array2;
use num_complex::Complex64;

use crate::conventions::DEGENERACY_TOL;
use crate::linalg::{hermitian_eig, HermitianEig};
use crate::types::{antisymmetrize, CovarianceMatrix, QuadraticHamiltonian};
use crate::{FgsError, Result};

/// Eigendecomposition of the Hermitian matrix `i·h`.
pub fn ih_eig(h: &QuadraticHamiltonian) -> HermitianEig {
    let n = h.dim();
    let c = h.coeffs();
    let m = Array2::from_shape_fn((n, n), |(j, k)| Complex64::new(0.0, c[(j, k)]));
    hermitian_eig(&m)
}

/// Ground-state energy of `h`: minus the sum of the quasiparticle energies,
/// i.e. `-Σ_k |λ_k|` over the eigenvalues of `i·h`. Well defined even for a
/// degenerate ground space.
pub fn ground_energy(h: &QuadraticHamiltonian) -> f64 {
    let eig = ih_eig(h);
    -eig.values.iter().map(|v| v.abs()).sum::<f64>()
}

fn check_gap(values: &[f64]) -> Result<()> {
    let min = values.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    if min < DEGENERACY_TOL {
        return Err(FgsError::DegenerateGroundSpace(min));
    }
    Ok(())
}

/// Covariance matrix of the (unique) ground state of `h`.
///
/// In the eigenbasis of `i·h = U Λ U†` the ground state occupies every
/// negative-energy mode, giving `Γ = Re(i · U sgn(Λ) U†)`. Signals
/// `DegenerateGroundSpace` when any quasiparticle energy falls below the
/// degeneracy tolerance; callers sampling random Hamiltonians retry with a
/// fresh seed.
pub fn ground_state_covariance(h: &QuadraticHamiltonian) -> Result<CovarianceMatrix> {
    let eig = ih_eig(h);
    check_gap(&eig.values)?;
    let n = h.dim();
    let mut g = Array2::<f64>::zeros((n, n));
    for j in 0..n {
        for k in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..n {
                let s = if eig.values[m] >= 0.0 { 1.0 } else { -1.0 };
                acc += eig.vectors[(j, m)] * s * eig.vectors[(k, m)].conj();
            }
            g[(j, k)] = -acc.im; // Re(i · U sgn(Λ) U†)
        }
    }
    antisymmetrize(&mut g);
    CovarianceMatrix::new(h.size(), g)
}

/// `exp(scale · h)` for antisymmetric `h`, computed through the spectral
/// decomposition of `i·h` so the result is orthogonal to machine precision
/// (no scaling-and-squaring drift).
pub fn orthogonal_exponential(h: &QuadraticHamiltonian, scale: f64) -> Array2<f64> {
    let eig = ih_eig(h);
    let n = h.dim();
    // h = U (-iΛ) U†  ⇒  exp(scale·h) = U exp(-i·scale·Λ) U†
    let mut o = Array2::<f64>::zeros((n, n));
    for j in 0..n {
        for k in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..n {
                let phase = Complex64::from_polar(1.0, -scale * eig.values[m]);
                acc += eig.vectors[(j, m)] * phase * eig.vectors[(k, m)].conj();
            }
            o[(j, k)] = acc.re;
        }
    }
    o
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::energy;
    use ndarray::array;

    #[test]
    fn single_site_ground_state() {
        let a = 0.8;
        let h = QuadraticHamiltonian::new(1, array![[0.0, a], [-a, 0.0]]).unwrap();
        let g = ground_state_covariance(&h).unwrap();
        assert!((g.gamma()[(0, 1)] + 1.0).abs() < 1e-14);
        let e = energy(&h, &g).unwrap();
        assert!((e + 2.0 * a).abs() < 1e-14);
        assert!((ground_energy(&h) + 2.0 * a).abs() < 1e-14);
    }

    #[test]
    fn zero_hamiltonian_is_degenerate() {
        let h = QuadraticHamiltonian::zeros(2);
        assert!(matches!(
            ground_state_covariance(&h),
            Err(FgsError::DegenerateGroundSpace(_))
        ));
    }

    #[test]
    fn ground_state_is_pure_and_variational() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for l in [2usize, 4, 6] {
            let n = 2 * l;
            let mut m = Array2::zeros((n, n));
            for j in 0..n {
                for k in (j + 1)..n {
                    let v: f64 = rng.gen_range(-1.0..1.0);
                    m[(j, k)] = v;
                    m[(k, j)] = -v;
                }
            }
            let h = QuadraticHamiltonian::new(l, m).unwrap();
            let g = ground_state_covariance(&h).unwrap();
            assert!(g.purity_deviation() < 1e-12, "purity at L={l}");
            let e0 = energy(&h, &g).unwrap();
            assert!((e0 - ground_energy(&h)).abs() < 1e-10);
            // any product state must lie above the ground energy
            let z = CovarianceMatrix::z_polarized(l);
            assert!(energy(&h, &z).unwrap() >= e0 - 1e-10);
        }
    }

    #[test]
    fn exponential_is_orthogonal() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let l = 4;
        let n = 2 * l;
        let mut m = Array2::zeros((n, n));
        for j in 0..n {
            for k in (j + 1)..n {
                let v: f64 = rng.gen_range(-1.0..1.0);
                m[(j, k)] = v;
                m[(k, j)] = -v;
            }
        }
        let h = QuadraticHamiltonian::new(l, m).unwrap();
        let o = orthogonal_exponential(&h, 1.37);
        let id = o.t().dot(&o);
        for j in 0..n {
            for k in 0..n {
                let target = if j == k { 1.0 } else { 0.0 };
                assert!((id[(j, k)] - target).abs() < 1e-13);
            }
        }
    }
}
