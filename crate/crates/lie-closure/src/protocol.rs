//! Generator sets of the two circuit protocols, in the spin picture.

use fgs_core::BoundaryCondition;
use num_rational::BigRational;
use num_traits::One;

use crate::sum::OperatorSum;
use crate::{LieError, Result};

/// Angle-coupling family of the alternating circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Protocol {
    /// One shared angle per sublayer: generators are the two summed terms.
    SiteIndependent,
    /// One angle per site per sublayer: every `Z_j` and every bond is its
    /// own generator.
    SiteDependent,
}

impl std::fmt::Display for Protocol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Protocol::SiteIndependent => write!(f, "site_independent"),
            Protocol::SiteDependent => write!(f, "site_dependent"),
        }
    }
}

impl std::str::FromStr for Protocol {
    type Err = LieError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dep" | "site_dependent" | "dependent" => Ok(Protocol::SiteDependent),
            "indep" | "site_independent" | "independent" => Ok(Protocol::SiteIndependent),
            _ => Err(LieError::BadSize(0)),
        }
    }
}

fn bond_masks(l: usize, bc: BoundaryCondition) -> Vec<u64> {
    let mut bonds: Vec<u64> = (0..l - 1)
        .map(|j| (1u64 << j) | (1u64 << (j + 1)))
        .collect();
    if bc.is_periodic() && l > 2 {
        bonds.push((1u64 << (l - 1)) | 1u64);
    } else if bc.is_periodic() && l == 2 {
        // the wrap bond coincides with the single chain bond
    }
    bonds
}

/// The protocol's generators as anti-Hermitian elements `i·H`.
/// Site-dependent: bond terms first, then site terms (2L for PBC, 2L-1 for
/// OBC). Site-independent: exactly the two summed generators.
pub fn protocol_generators(
    protocol: Protocol,
    l: usize,
    bc: BoundaryCondition,
) -> Result<Vec<OperatorSum>> {
    if l < 2 || l > 64 {
        return Err(LieError::BadSize(l));
    }
    let bonds = bond_masks(l, bc);
    match protocol {
        Protocol::SiteDependent => {
            let mut gens: Vec<OperatorSum> = bonds
                .iter()
                .map(|&m| OperatorSum::from_hermitian(l, m, 0))
                .collect();
            gens.extend((0..l).map(|j| OperatorSum::from_hermitian(l, 0, 1u64 << j)));
            Ok(gens)
        }
        Protocol::SiteIndependent => {
            let mut zsum = OperatorSum::zero(l);
            for j in 0..l {
                zsum.add_key((0, 1u64 << j), BigRational::one());
            }
            let mut xsum = OperatorSum::zero(l);
            for &m in &bonds {
                xsum.add_key((m, 0), BigRational::one());
            }
            Ok(vec![zsum, xsum])
        }
    }
}
