//! Rational linear combinations of Hermitian Pauli strings, representing
//! anti-Hermitian algebra elements `A = i·H`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::pauli::PauliTerm;
use crate::{LieError, Result};

pub type Key = (u64, u64);

/// `A = i·H` with `H = Σ coeff · W(x, z)`; coefficients are exact rationals
/// and never zero. `hermitian_class` records that the stored map is the
/// Hermitian part `H` (it is an invariant of every constructor here).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorSum {
    sites: usize,
    terms: BTreeMap<Key, BigRational>,
    hermitian_class: bool,
}

impl OperatorSum {
    pub fn zero(sites: usize) -> Self {
        Self {
            sites,
            terms: BTreeMap::new(),
            hermitian_class: true,
        }
    }

    /// Build from a general signed string: `coeff · i^{p} X^x Z^z` must be a
    /// real multiple of the Hermitian representative `W(x, z)`.
    pub fn from_pauli(sites: usize, term: PauliTerm, coeff: BigRational) -> Result<Self> {
        let mut s = Self::zero(sites);
        s.add_pauli(term, coeff)?;
        Ok(s)
    }

    /// Convenience: a unit-coefficient Hermitian string.
    pub fn from_hermitian(sites: usize, x_mask: u64, z_mask: u64) -> Self {
        let mut s = Self::zero(sites);
        s.add_key((x_mask, z_mask), BigRational::one());
        s
    }

    pub fn add_pauli(&mut self, term: PauliTerm, coeff: BigRational) -> Result<()> {
        let w = ((term.x_mask & term.z_mask).count_ones() % 4) as u8;
        let rel = (4 + term.phase_power as i8 - w as i8) as u8 % 4;
        let signed = match rel {
            0 => coeff,
            2 => -coeff,
            p => return Err(LieError::NonHermitianClass(p)),
        };
        self.add_key((term.x_mask, term.z_mask), signed);
        Ok(())
    }

    pub fn add_key(&mut self, key: Key, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn hermitian_class(&self) -> bool {
        self.hermitian_class
    }

    /// Lexicographically smallest `(x, z)` key: the row-reduction pivot.
    pub fn leading(&self) -> Option<(&Key, &BigRational)> {
        self.terms.iter().next()
    }

    pub fn coeff(&self, key: &Key) -> Option<&BigRational> {
        self.terms.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &BigRational)> {
        self.terms.iter()
    }

    /// Terms with coefficients lowered to `f64` (for dense cross-checks).
    pub fn terms_f64(&self) -> Vec<(u64, u64, f64)> {
        self.terms
            .iter()
            .map(|(&(x, z), c)| (x, z, rational_to_f64(c)))
            .collect()
    }

    pub fn scale(&mut self, factor: &BigRational) {
        if factor.is_zero() {
            self.terms.clear();
            return;
        }
        for c in self.terms.values_mut() {
            *c *= factor;
        }
    }

    /// `self -= factor · other`
    pub fn sub_scaled(&mut self, other: &OperatorSum, factor: &BigRational) {
        for (key, c) in other.terms.iter() {
            self.add_key(*key, -(factor * c));
        }
    }

    /// Exact commutator `[self, other]` of two `i·H` elements; the result is
    /// again an `i·H` element with rational coefficients.
    pub fn commutator(&self, other: &OperatorSum) -> Result<OperatorSum> {
        if self.sites != other.sites {
            return Err(LieError::SiteMismatch(other.sites, self.sites));
        }
        let mut out = OperatorSum::zero(self.sites);
        let two = BigRational::from_integer(BigInt::from(2));
        for (&(x1, z1), c1) in self.terms.iter() {
            let w1 = (x1 & z1).count_ones();
            for (&(x2, z2), c2) in other.terms.iter() {
                let sym = (x1 & z2).count_ones() + (z1 & x2).count_ones();
                if sym % 2 == 0 {
                    continue; // commuting strings contribute nothing
                }
                let x3 = x1 ^ x2;
                let z3 = z1 ^ z2;
                let w2 = (x2 & z2).count_ones();
                let w3 = (x3 & z3).count_ones();
                // W1·W2 = i^k W3 with k odd for anticommuting strings
                let k = (w1 + w2 + 2 * (z1 & x2).count_ones() + 4 * 64 - w3) % 4;
                debug_assert!(k % 2 == 1);
                let sign = if k == 1 { -1 } else { 1 };
                out.add_key((x3, z3), c1 * c2 * &two * BigInt::from(sign));
            }
        }
        Ok(out)
    }

    /// Multiply by the parity string `P = Π_j Z_j` (exact). Errors when the
    /// element fails to commute with `P` (odd X-weight term).
    pub fn mul_parity(&self) -> Result<OperatorSum> {
        let ones = if self.sites == 64 {
            u64::MAX
        } else {
            (1u64 << self.sites) - 1
        };
        let mut out = OperatorSum::zero(self.sites);
        for (&(x, z), c) in self.terms.iter() {
            let xw = x.count_ones();
            if xw % 2 != 0 {
                return Err(LieError::ParityNotConserved);
            }
            let w = (x & z).count_ones();
            // P·W(x,z) = (-1)^{w + |x|/2} W(x, z ⊕ ones)
            let sign = if (w + xw / 2) % 2 == 0 { 1 } else { -1 };
            out.add_key((x, z ^ ones), c * BigInt::from(sign));
        }
        Ok(out)
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    // exact numer/denom conversion is fine at the magnitudes closure produces
    let num = r.numer();
    let den = r.denom();
    let fnum: f64 = num.to_string().parse().unwrap_or(if num.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    });
    let fden: f64 = den.to_string().parse().unwrap_or(f64::INFINITY);
    fnum / fden
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> BigRational {
        BigRational::one()
    }

    #[test]
    fn commutator_of_z_and_xx() {
        // [iZ_1, iX_1X_2] = i·(-2 Y_1X_2)
        let z1 = OperatorSum::from_hermitian(2, 0, 0b01);
        let xx = OperatorSum::from_hermitian(2, 0b11, 0);
        let c = z1.commutator(&xx).unwrap();
        assert_eq!(c.len(), 1);
        let (key, coeff) = c.leading().unwrap();
        assert_eq!(*key, (0b11, 0b01)); // Y_1 X_2
        assert_eq!(*coeff, -BigRational::from_integer(BigInt::from(2)));
    }

    #[test]
    fn commuting_strings_bracket_to_zero() {
        let z1 = OperatorSum::from_hermitian(2, 0, 0b01);
        let z2 = OperatorSum::from_hermitian(2, 0, 0b10);
        assert!(z1.commutator(&z2).unwrap().is_zero());
    }

    #[test]
    fn parity_multiplication() {
        // P·(X_1X_2) on 2 sites: w=0, |x|=2 → sign (-1)^1 = -1, key (11, 11) = Y_1Y_2
        let xx = OperatorSum::from_hermitian(2, 0b11, 0);
        let p = xx.mul_parity().unwrap();
        let (key, coeff) = p.leading().unwrap();
        assert_eq!(*key, (0b11, 0b11));
        assert_eq!(*coeff, -one());
        // odd X-weight fails
        let x1 = OperatorSum::from_hermitian(2, 0b01, 0);
        assert!(matches!(x1.mul_parity(), Err(LieError::ParityNotConserved)));
    }

    #[test]
    fn non_hermitian_phase_rejected() {
        let t = PauliTerm {
            x_mask: 1,
            z_mask: 0,
            phase_power: 1,
        };
        assert!(matches!(
            OperatorSum::from_pauli(2, t, one()),
            Err(LieError::NonHermitianClass(_))
        ));
    }
}
