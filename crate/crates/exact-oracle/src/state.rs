//! Dense state vectors.

use num_complex::Complex64;

use crate::{OracleError, Result, MAX_DENSE_SITES};

const NORM_TOL: f64 = 1e-12;

/// A normalized state on `sites` qubits, amplitudes indexed by bit pattern
/// (bit `j` = site `j`, 0 = up).
#[derive(Debug, Clone)]
pub struct DenseState {
    pub sites: usize,
    pub amps: Vec<Complex64>,
}

impl DenseState {
    pub fn new(sites: usize, amps: Vec<Complex64>) -> Result<Self> {
        if sites > MAX_DENSE_SITES {
            return Err(OracleError::TooLarge(sites));
        }
        if amps.len() != 1 << sites {
            return Err(OracleError::BadStateLength(amps.len()));
        }
        let s = Self { sites, amps };
        let dev = (s.norm() - 1.0).abs();
        if dev > NORM_TOL {
            return Err(OracleError::NotNormalized(dev));
        }
        Ok(s)
    }

    /// Computational basis state for a bit pattern.
    pub fn basis(sites: usize, bits: usize) -> Result<Self> {
        if sites > MAX_DENSE_SITES {
            return Err(OracleError::TooLarge(sites));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << sites];
        amps[bits] = Complex64::new(1.0, 0.0);
        Ok(Self { sites, amps })
    }

    /// `|↑…↑⟩`.
    pub fn all_up(sites: usize) -> Result<Self> {
        Self::basis(sites, 0)
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            for a in &mut self.amps {
                *a /= n;
            }
        }
    }

    pub fn inner(&self, other: &DenseState) -> Result<Complex64> {
        if self.sites != other.sites {
            return Err(OracleError::SizeMismatch(self.sites, other.sites));
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap(&self, other: &DenseState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Parity of each basis state is `(-1)^{popcount}`; returns `⟨P⟩`.
    pub fn parity_expectation(&self) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .map(|(s, a)| {
                let sign = if (s.count_ones() & 1) == 0 { 1.0 } else { -1.0 };
                sign * a.norm_sqr()
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_overlap_is_one() {
        let s = DenseState::all_up(3).unwrap();
        assert!((s.overlap(&s).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn norm_validation() {
        let amps = vec![Complex64::new(0.7, 0.0); 4];
        assert!(DenseState::new(2, amps).is_err());
    }

    #[test]
    fn parity_of_basis_states() {
        assert_eq!(
            DenseState::basis(3, 0b000).unwrap().parity_expectation(),
            1.0
        );
        assert_eq!(
            DenseState::basis(3, 0b001).unwrap().parity_expectation(),
            -1.0
        );
        assert_eq!(
            DenseState::basis(3, 0b011).unwrap().parity_expectation(),
            1.0
        );
    }
}
