//! Dense eigendecomposition: full spectra, parity-sector spectra, and the
//! low-lying eigenstates used by the staircase overlap studies.

use faer::complex_native::c64;
use faer::{Mat, Side};
use num_complex::Complex64;

use fgs_core::ParitySector;

use crate::dense_op::DenseOperator;
use crate::state::DenseState;
use crate::{OracleError, Result};

#[derive(Debug, Clone)]
pub struct EigenPair {
    pub energy: f64,
    pub state: DenseState,
}

/// Hermitian eigendecomposition of a dense matrix; eigenvalues ascending,
/// eigenvectors as columns.
pub fn eigh(m: &Mat<c64>) -> (Vec<f64>, Mat<c64>) {
    let evd = m.selfadjoint_eigendecomposition(Side::Lower);
    let n = m.nrows();
    let s = evd.s();
    let values: Vec<f64> = (0..n).map(|i| s.column_vector().read(i).re).collect();
    let vectors = evd.u().to_owned();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let sorted_vals: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let mut sorted_vecs = Mat::<c64>::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        for r in 0..n {
            sorted_vecs.write(r, col, vectors.read(r, i));
        }
    }
    (sorted_vals, sorted_vecs)
}

fn sector_indices(l: usize, sector: ParitySector) -> Vec<usize> {
    let dim = 1usize << l;
    match sector {
        ParitySector::Unrestricted => (0..dim).collect(),
        ParitySector::Even => (0..dim).filter(|s| s.count_ones() % 2 == 0).collect(),
        ParitySector::Odd => (0..dim).filter(|s| s.count_ones() % 2 == 1).collect(),
    }
}

/// The `n_lowest` eigenpairs of `op`, optionally restricted to one parity
/// sector (the operator must commute with parity for the restriction to be
/// meaningful; quadratic Hamiltonians always do).
pub fn dense_ground_states(
    op: &DenseOperator,
    n_lowest: usize,
    sector: ParitySector,
) -> Result<Vec<EigenPair>> {
    let l = op.sites;
    let idx = sector_indices(l, sector);
    let sub = idx.len();
    if sub == 0 {
        return Err(OracleError::BadStateLength(0));
    }
    let full = op.to_matrix();
    let mut block = Mat::<c64>::zeros(sub, sub);
    for (r, &sr) in idx.iter().enumerate() {
        for (c, &sc) in idx.iter().enumerate() {
            block.write(r, c, full.read(sr, sc));
        }
    }
    let (vals, vecs) = eigh(&block);
    let take = n_lowest.min(sub);
    let mut out = Vec::with_capacity(take);
    for k in 0..take {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << l];
        for (r, &sr) in idx.iter().enumerate() {
            let v = vecs.read(r, k);
            amps[sr] = Complex64::new(v.re, v.im);
        }
        let mut state = DenseState { sites: l, amps };
        state.normalize();
        out.push(EigenPair {
            energy: vals[k],
            state,
        });
    }
    Ok(out)
}

/// Group eigenpair indices into degenerate clusters (gap below `tol`).
pub fn degeneracy_groups(pairs: &[EigenPair], tol: f64) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if (p.energy - pairs[g[0]].energy).abs() <= tol => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense_op::quadratic_to_dense;
    use fgs_core::{build_ising, ground_energy, BoundaryCondition};

    #[test]
    fn ising_ground_energy_matches_quasiparticle_sum() {
        for (l, bc) in [
            (4usize, BoundaryCondition::Periodic),
            (4, BoundaryCondition::Open),
            (5, BoundaryCondition::Periodic),
        ] {
            let h = build_ising(l, bc).unwrap();
            let dense = quadratic_to_dense(&h).unwrap();
            let pairs = dense_ground_states(&dense, 1, ParitySector::Unrestricted).unwrap();
            let e_dense = pairs[0].energy;
            let e_cov = ground_energy(&h);
            assert!(
                (e_dense - e_cov).abs() < 1e-10,
                "L={l} {bc}: dense {e_dense} vs covariance {e_cov}"
            );
        }
    }

    #[test]
    fn sector_spectra_partition_the_full_spectrum() {
        let h = fgs_core::random_symmetric_quadratic(3, 9);
        let dense = quadratic_to_dense(&h).unwrap();
        let all = dense_ground_states(&dense, 8, ParitySector::Unrestricted).unwrap();
        let even = dense_ground_states(&dense, 4, ParitySector::Even).unwrap();
        let odd = dense_ground_states(&dense, 4, ParitySector::Odd).unwrap();
        let mut merged: Vec<f64> = even.iter().chain(odd.iter()).map(|p| p.energy).collect();
        merged.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in all.iter().zip(merged.iter()) {
            assert!((a.energy - b).abs() < 1e-10);
        }
    }

    #[test]
    fn eigenbasis_is_complete() {
        let h = fgs_core::random_symmetric_quadratic(3, 2);
        let dense = quadratic_to_dense(&h).unwrap();
        let pairs = dense_ground_states(&dense, 8, ParitySector::Unrestricted).unwrap();
        let psi = DenseState::all_up(3).unwrap();
        let total: f64 = pairs.iter().map(|p| p.state.overlap(&psi).unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-10, "completeness sum {total}");
    }
}
