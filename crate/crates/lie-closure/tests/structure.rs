//! Structural checks on the closed algebras: the site-dependent open-chain
//! basis must consist of single strings of the five bilinear families
//! (`Z_j` and `{X,Y}_j Z…Z {X,Y}_k`), i.e. exactly the Majorana bilinears.

use fgs_core::BoundaryCondition;
use lie_closure::{closure, protocol_generators, OperatorSum, Protocol};

/// Is this single Hermitian string of the form `Z_j` or
/// `{X,Y}_j Z…Z {X,Y}_k` (contiguous interior Z-string, weight ≤ L)?
fn is_bilinear_string(sites: usize, x: u64, z: u64) -> bool {
    if x == 0 {
        // must be a single Z
        return z.count_ones() == 1;
    }
    if x.count_ones() != 2 {
        return false;
    }
    let j = x.trailing_zeros() as u64;
    let k = 63 - x.leading_zeros() as u64;
    // interior sites strictly between j and k must be Z; endpoints may each
    // carry an extra z bit (Y); nothing outside the support
    let interior: u64 = if k > j + 1 {
        ((1u64 << k) - 1) ^ ((1u64 << (j + 1)) - 1)
    } else {
        0
    };
    let allowed = interior | x;
    if z & !allowed != 0 {
        return false;
    }
    if interior & !z != 0 {
        return false;
    }
    (j as usize) < sites && (k as usize) < sites
}

fn single_term_families(basis: &[OperatorSum]) -> bool {
    basis.iter().all(|op| {
        op.len() == 1
            && op
                .terms_f64()
                .iter()
                .all(|&(x, z, _)| is_bilinear_string(op.sites(), x, z))
    })
}

#[test]
fn site_dependent_obc_basis_is_majorana_bilinears() {
    for l in 2..=6 {
        let gens =
            protocol_generators(Protocol::SiteDependent, l, BoundaryCondition::Open).unwrap();
        let basis = closure(&gens, 4 * (2 * l) * (2 * l)).unwrap();
        assert_eq!(basis.dimension, l * (2 * l - 1), "dimension at L={l}");
        assert!(
            single_term_families(&basis.basis),
            "non-bilinear element in the L={l} open-chain basis"
        );
    }
}

#[test]
fn closure_is_exactly_closed() {
    for (protocol, bc) in [
        (Protocol::SiteDependent, BoundaryCondition::Periodic),
        (Protocol::SiteIndependent, BoundaryCondition::Open),
        (Protocol::SiteIndependent, BoundaryCondition::Periodic),
    ] {
        let gens = protocol_generators(protocol, 5, bc).unwrap();
        let basis = closure(&gens, 400).unwrap();
        assert!(basis.verify_closed().unwrap(), "{protocol} {bc}");
    }
}

#[test]
fn generation_round_count_is_reported() {
    let gens = protocol_generators(Protocol::SiteDependent, 4, BoundaryCondition::Open).unwrap();
    let basis = closure(&gens, 200).unwrap();
    assert!(basis.generation_rounds >= 2);
    assert!(basis.generation_rounds <= 10);
}
