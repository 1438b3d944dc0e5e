//! Cross-validation of every covariance-matrix operation against the dense
//! statevector route, on batches of random instances. This suite is the
//! convention-calibration gate: all frozen signs and scales in
//! `fgs_core::conventions` must hold here before anything else is trusted.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fgs_core::conventions::EVOLUTION_SCALE;
use fgs_core::{
    build_cluster, build_ising, build_long_range, energy, evolve_layer, fidelity,
    ground_state_covariance, parity, BoundaryCondition, CovarianceMatrix, ParitySector,
    QuadraticHamiltonian, Sublayer,
};
use ndarray::Array2;

use crate::circuit::{dense_circuit, LayerAngles};
use crate::covariance::covariance_from_state;
use crate::dense_op::{quadratic_to_dense, spin_models};
use crate::pauli::{jordan_wigner_majorana, parity_op};
use crate::spectra::{dense_ground_states, eigh};
use crate::state::DenseState;
use crate::Result;

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub max_err: f64,
    pub tol: f64,
    pub instances: usize,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.max_err <= self.tol
    }
}

impl std::fmt::Display for CheckResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {} (max err {:.3e}, tol {:.1e}, {} instances)",
            self.name,
            if self.passed() { "PASS" } else { "FAIL" },
            self.max_err,
            self.tol,
            self.instances
        )
    }
}

pub const ORACLE_TOL: f64 = 1e-8;

fn random_antisymmetric_h(l: usize, rng: &mut ChaCha8Rng) -> QuadraticHamiltonian {
    let n = 2 * l;
    let mut m = Array2::zeros((n, n));
    for j in 0..n {
        for k in (j + 1)..n {
            let v: f64 = rng.gen_range(-1.0..1.0);
            m[(j, k)] = v;
            m[(k, j)] = -v;
        }
    }
    QuadraticHamiltonian::new(l, m).unwrap()
}

fn random_layers(l: usize, depth: usize, rng: &mut ChaCha8Rng) -> Vec<LayerAngles> {
    (0..depth)
        .map(|_| LayerAngles {
            xx: (0..l).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            z: (0..l).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        })
        .collect()
}

/// Matching (dense state, covariance matrix) pair prepared by the same
/// random circuit on both routes.
fn random_state_pair(
    l: usize,
    depth: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(DenseState, CovarianceMatrix)> {
    let layers = random_layers(l, depth, rng);
    let psi = dense_circuit(
        &DenseState::all_up(l)?,
        BoundaryCondition::Periodic,
        &layers,
    )?;
    let mut g = CovarianceMatrix::z_polarized(l);
    for layer in &layers {
        g = evolve_layer(&g, Sublayer::Xx, BoundaryCondition::Periodic, &layer.xx)?;
        g = evolve_layer(&g, Sublayer::Z, BoundaryCondition::Periodic, &layer.z)?;
    }
    Ok((psi, g))
}

/// `exp(-iθ H_dense)|ψ⟩` through the dense eigendecomposition.
fn evolve_dense(h: &QuadraticHamiltonian, theta: f64, psi: &DenseState) -> Result<DenseState> {
    let dense = quadratic_to_dense(h)?;
    let (vals, vecs) = eigh(&dense.to_matrix());
    let dim = psi.amps.len();
    // coeffs = U† ψ
    let mut coeffs = vec![Complex64::new(0.0, 0.0); dim];
    for k in 0..dim {
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..dim {
            let u = vecs.read(r, k);
            acc += Complex64::new(u.re, -u.im) * psi.amps[r];
        }
        coeffs[k] = acc * Complex64::from_polar(1.0, -theta * vals[k]);
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    for r in 0..dim {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..dim {
            let u = vecs.read(r, k);
            acc += Complex64::new(u.re, u.im) * coeffs[k];
        }
        amps[r] = acc;
    }
    Ok(DenseState {
        sites: psi.sites,
        amps,
    })
}

fn max_abs_diff(a: &CovarianceMatrix, b: &CovarianceMatrix) -> f64 {
    (a.gamma() - b.gamma())
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Z-polarized covariance equals the dense covariance of `|↑…↑⟩` exactly.
pub fn check_z_polarized(lmax: usize) -> Result<CheckResult> {
    let mut max_err: f64 = 0.0;
    let mut count = 0;
    for l in 1..=lmax {
        let dense = covariance_from_state(&DenseState::all_up(l)?)?;
        max_err = max_err.max(max_abs_diff(&dense, &CovarianceMatrix::z_polarized(l)));
        count += 1;
    }
    Ok(CheckResult {
        name: "z_polarized_covariance".into(),
        max_err,
        tol: 1e-14,
        instances: count,
    })
}

/// `energy(h, Γ_ψ) = ⟨ψ|H|ψ⟩` for random states (the contraction holds for
/// any state, Gaussian or not).
pub fn check_energy(instances: usize, lmax: usize, seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_err: f64 = 0.0;
    for i in 0..instances {
        let l = 2 + (i % (lmax - 1));
        let h = random_antisymmetric_h(l, &mut rng);
        let (psi, _) = random_state_pair(l, 3, &mut rng)?;
        let gamma = covariance_from_state(&psi)?;
        let dense = quadratic_to_dense(&h)?.expectation(&psi);
        let cov = energy(&h, &gamma)?;
        max_err = max_err.max((dense.re - cov).abs()).max(dense.im.abs());
    }
    Ok(CheckResult {
        name: "energy".into(),
        max_err,
        tol: ORACLE_TOL,
        instances,
    })
}

/// Generic evolution with an injectable generator scale; the production
/// value is `EVOLUTION_SCALE`, and the calibration suite also runs a
/// negative control demonstrating that a perturbed scale fails.
pub fn check_evolve_with_scale(
    instances: usize,
    lmax: usize,
    seed: u64,
    scale: f64,
) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_err: f64 = 0.0;
    for i in 0..instances {
        let l = 2 + (i % (lmax - 1));
        let h = random_antisymmetric_h(l, &mut rng);
        let theta: f64 = rng.gen_range(-1.5..1.5);
        let (psi, gamma) = random_state_pair(l, 2, &mut rng)?;
        let dense_evolved = covariance_from_state(&evolve_dense(&h, theta, &psi)?)?;
        let cov_evolved = fgs_core::dynamics::evolve_with_scale(&gamma, &h, theta, scale)?;
        max_err = max_err.max(max_abs_diff(&dense_evolved, &cov_evolved));
    }
    Ok(CheckResult {
        name: if scale == EVOLUTION_SCALE {
            "evolve".into()
        } else {
            format!("evolve(scale={scale})")
        },
        max_err,
        tol: ORACLE_TOL,
        instances,
    })
}

pub fn check_evolve(instances: usize, lmax: usize, seed: u64) -> Result<CheckResult> {
    check_evolve_with_scale(instances, lmax, seed, EVOLUTION_SCALE)
}

/// Sublayer fast path vs the exact dense circuit.
pub fn check_circuit(instances: usize, lmax: usize, seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_err: f64 = 0.0;
    for i in 0..instances {
        let l = 2 + (i % (lmax - 1));
        let depth = 1 + (i % 3);
        let (psi, gamma) = random_state_pair(l, depth, &mut rng)?;
        max_err = max_err.max(max_abs_diff(&covariance_from_state(&psi)?, &gamma));
    }
    Ok(CheckResult {
        name: "circuit_layers".into(),
        max_err,
        tol: 1e-10,
        instances,
    })
}

/// Ground-state covariance and ground energy vs dense diagonalization.
pub fn check_ground_state(instances: usize, lmax: usize, seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_err: f64 = 0.0;
    let mut done = 0;
    while done < instances {
        let l = 2 + (done % (lmax - 1));
        let h = random_antisymmetric_h(l, &mut rng);
        let cov = match ground_state_covariance(&h) {
            Ok(g) => g,
            Err(fgs_core::FgsError::DegenerateGroundSpace(_)) => continue,
            Err(e) => return Err(e.into()),
        };
        let dense = quadratic_to_dense(&h)?;
        let pairs = dense_ground_states(&dense, 2, ParitySector::Unrestricted)?;
        let dense_gamma = covariance_from_state(&pairs[0].state)?;
        max_err = max_err.max(max_abs_diff(&dense_gamma, &cov));
        let e_cov = energy(&h, &cov)?;
        max_err = max_err.max((pairs[0].energy - e_cov).abs());
        max_err = max_err.max((fgs_core::ground_energy(&h) - pairs[0].energy).abs());
        done += 1;
    }
    Ok(CheckResult {
        name: "ground_state_covariance".into(),
        max_err,
        tol: ORACLE_TOL,
        instances,
    })
}

/// Pfaffian parity vs `⟨Π Z_j⟩`, including the single-mode-flipped vacuum.
pub fn check_parity(instances: usize, lmax: usize, seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_err: f64 = 0.0;
    for i in 0..instances {
        let l = 2 + (i % (lmax - 1));
        let (psi, gamma) = random_state_pair(l, 2, &mut rng)?;
        let dense_p = psi.parity_expectation();
        let cov_p = parity(&gamma)? as f64;
        max_err = max_err.max((dense_p - cov_p).abs());

        // γ_a |↑…↑⟩ is an odd-parity Gaussian state
        let a = rng.gen_range(1..=2 * l);
        let flipped = jordan_wigner_majorana(a, l)?.apply(&DenseState::all_up(l)?);
        let gf = covariance_from_state(&flipped)?;
        max_err = max_err.max((parity(&gf)? as f64 + 1.0).abs());
        max_err = max_err.max((flipped.parity_expectation() + 1.0).abs());
    }
    Ok(CheckResult {
        name: "parity".into(),
        max_err,
        tol: ORACLE_TOL,
        instances,
    })
}

/// Pfaffian overlap formula vs dense inner products.
pub fn check_fidelity(instances: usize, lmax: usize, seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_err: f64 = 0.0;
    for i in 0..instances {
        let l = 2 + (i % (lmax - 1));
        let (psi1, g1) = random_state_pair(l, 2, &mut rng)?;
        let (psi2, g2) = random_state_pair(l, 2, &mut rng)?;
        let dense = psi1.overlap(&psi2)?;
        let cov = fidelity(&g1, &g2)?;
        max_err = max_err.max((dense - cov).abs());
    }
    Ok(CheckResult {
        name: "fidelity".into(),
        max_err,
        tol: ORACLE_TOL,
        instances,
    })
}

/// Builders vs dense spin Hamiltonians, compared on the even-parity sector
/// (the sector of the Z-polarized initial state). Open-boundary chains are
/// compared on the full space.
pub fn check_builders(lmax: usize) -> Result<CheckResult> {
    let mut max_err: f64 = 0.0;
    let mut count = 0;
    for l in 3..=lmax {
        let cases: Vec<(QuadraticHamiltonian, crate::dense_op::DenseOperator, bool)> = vec![
            (
                build_ising(l, BoundaryCondition::Open)?,
                spin_models::ising(l, BoundaryCondition::Open)?,
                false,
            ),
            (
                build_ising(l, BoundaryCondition::Periodic)?,
                spin_models::ising(l, BoundaryCondition::Periodic)?,
                true,
            ),
            (
                build_long_range(l, 0.7)?,
                spin_models::long_range(l, 0.7)?,
                true,
            ),
            (
                build_long_range(l, 2.5)?,
                spin_models::long_range(l, 2.5)?,
                true,
            ),
            (build_cluster(l, 1)?, spin_models::cluster(l, 1)?, true),
        ];
        for (h, spin, even_sector_only) in cases {
            let quad = quadratic_to_dense(&h)?;
            let mq = quad.to_matrix();
            let ms = spin.to_matrix();
            let dim = mq.nrows();
            for r in 0..dim {
                for c in 0..dim {
                    if even_sector_only && ((r.count_ones() % 2 != 0) || (c.count_ones() % 2 != 0))
                    {
                        continue;
                    }
                    let a = mq.read(r, c);
                    let b = ms.read(r, c);
                    max_err = max_err.max(((a.re - b.re).powi(2) + (a.im - b.im).powi(2)).sqrt());
                }
            }
            count += 1;
        }
    }
    Ok(CheckResult {
        name: "builders_vs_spin_models".into(),
        max_err,
        tol: 1e-10,
        instances: count,
    })
}

/// `[H_dense, P] = 0` for every builder output.
pub fn check_parity_commutation(lmax: usize) -> Result<CheckResult> {
    let mut max_err: f64 = 0.0;
    let mut count = 0;
    for l in 3..=lmax {
        for op in [
            quadratic_to_dense(&build_ising(l, BoundaryCondition::Periodic)?)?,
            quadratic_to_dense(&build_ising(l, BoundaryCondition::Open)?)?,
            quadratic_to_dense(&build_long_range(l, 1.0)?)?,
            quadratic_to_dense(&build_cluster(l, 1)?)?,
            spin_models::ising(l, BoundaryCondition::Periodic)?,
        ] {
            max_err = max_err.max(op.parity_commutator_deviation());
            let _ = parity_op(l);
            count += 1;
        }
    }
    Ok(CheckResult {
        name: "dense_parity_commutation".into(),
        max_err,
        tol: 1e-12,
        instances: count,
    })
}

/// The full fgs-core calibration suite at the given instance count.
pub fn run_all(instances: usize, lmax: usize, seed: u64) -> Result<Vec<CheckResult>> {
    Ok(vec![
        check_z_polarized(lmax)?,
        check_energy(instances, lmax, seed)?,
        check_evolve(instances, lmax, seed.wrapping_add(1))?,
        check_circuit(instances, lmax, seed.wrapping_add(2))?,
        check_ground_state(instances, lmax, seed.wrapping_add(3))?,
        check_parity(instances, lmax, seed.wrapping_add(4))?,
        check_fidelity(instances, lmax, seed.wrapping_add(5))?,
        check_builders(lmax)?,
        check_parity_commutation(lmax)?,
    ])
}
