//! Parity-sector restriction of a closed algebra.
//!
//! On a fixed sector of `P = Π_j Z_j`, an element `A` (which commutes with
//! `P`) acts as `A·π_± ∝ A ± P·A`. The restricted algebra dimension is the
//! exact rank of `{A_i ± P·A_i}` over the Pauli-string coordinates, computed
//! with the same rational reducer as the closure itself. Cross-validated
//! against dense projector ranks for small lattices.

use crate::closure::{LieBasis, Reducer};
use crate::{LieError, Result};

/// Dimension of the algebra projected to the `sector` (+1 or -1) of the
/// fermionic parity. Every basis element must commute with `P`.
pub fn parity_restricted_dimension(basis: &LieBasis, sector: i8) -> Result<usize> {
    if sector != 1 && sector != -1 {
        return Err(LieError::BadSize(sector.unsigned_abs() as usize));
    }
    let mut red = Reducer::new();
    for a in &basis.basis {
        let pa = a.mul_parity()?; // errors if A fails to commute with P
        let mut proj = a.clone();
        for (key, c) in pa.iter() {
            let signed = if sector == 1 { c.clone() } else { -c.clone() };
            proj.add_key(*key, signed);
        }
        red.insert(proj);
    }
    Ok(red.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::closure;
    use crate::protocol::{protocol_generators, Protocol};
    use fgs_core::BoundaryCondition;

    #[test]
    fn site_dependent_pbc_sector_halves() {
        // L=4: dim 2L(2L-1) = 56 unrestricted, L(2L-1) = 28 per sector
        let gens =
            protocol_generators(Protocol::SiteDependent, 4, BoundaryCondition::Periodic).unwrap();
        let basis = closure(&gens, 200).unwrap();
        assert_eq!(basis.dimension, 56);
        assert_eq!(parity_restricted_dimension(&basis, 1).unwrap(), 28);
        assert_eq!(parity_restricted_dimension(&basis, -1).unwrap(), 28);
    }

    #[test]
    fn site_independent_pbc_sector() {
        // L=4: the closure settles dim at 3L-1 = 11 (the tabulated 3L-2
        // undercounts); the even sector carries ⌊3L/2⌋ = 6, the odd sector
        // one less at even L. Both confirmed against dense projector ranks.
        let gens =
            protocol_generators(Protocol::SiteIndependent, 4, BoundaryCondition::Periodic).unwrap();
        let basis = closure(&gens, 200).unwrap();
        assert_eq!(basis.dimension, 11);
        assert_eq!(parity_restricted_dimension(&basis, 1).unwrap(), 6);
        assert_eq!(parity_restricted_dimension(&basis, -1).unwrap(), 5);
    }

    #[test]
    fn site_independent_obc_sector_unchanged() {
        // L=4: dim L² = 16, unchanged per sector
        let gens =
            protocol_generators(Protocol::SiteIndependent, 4, BoundaryCondition::Open).unwrap();
        let basis = closure(&gens, 200).unwrap();
        assert_eq!(basis.dimension, 16);
        assert_eq!(parity_restricted_dimension(&basis, 1).unwrap(), 16);
    }
}
