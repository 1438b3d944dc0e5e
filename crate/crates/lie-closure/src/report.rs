//! Expressibility reports: computed algebra dimensions side by side with the
//! closed-form expressions for the unitary group, its fixed-parity
//! restriction, the stabilizer subgroup and the state manifold.

use fgs_core::BoundaryCondition;

use crate::closure::closure;
use crate::parity::parity_restricted_dimension;
use crate::protocol::{protocol_generators, Protocol};
use crate::Result;

/// Closed-form dimension of the generated unitary group's algebra.
pub fn dim_u_formula(protocol: Protocol, l: usize, bc: BoundaryCondition) -> usize {
    match (protocol, bc) {
        (Protocol::SiteDependent, BoundaryCondition::Open) => l * (2 * l - 1),
        (Protocol::SiteDependent, BoundaryCondition::Periodic) => 2 * l * (2 * l - 1),
        (Protocol::SiteIndependent, BoundaryCondition::Open) => l * l,
        (Protocol::SiteIndependent, BoundaryCondition::Periodic) => 3 * l - 2,
    }
}

/// Closed-form dimension after restriction to one parity sector.
pub fn dim_u_fixed_parity_formula(protocol: Protocol, l: usize, bc: BoundaryCondition) -> usize {
    match (protocol, bc) {
        (Protocol::SiteDependent, _) => l * (2 * l - 1),
        (Protocol::SiteIndependent, BoundaryCondition::Open) => l * l,
        (Protocol::SiteIndependent, BoundaryCondition::Periodic) => 3 * l / 2,
    }
}

/// Closed-form dimension of the stabilizer (gauge) subgroup of the initial
/// state. Reported from the closed form, not computed: deriving the
/// stabilizer inside the algebra is an analytic result, and the report
/// flags it as formula-sourced.
pub fn dim_g_formula(protocol: Protocol, l: usize, bc: BoundaryCondition) -> usize {
    match (protocol, bc) {
        (Protocol::SiteDependent, _) => l * l,
        (Protocol::SiteIndependent, BoundaryCondition::Open) => l * (l + 1) / 2,
        (Protocol::SiteIndependent, BoundaryCondition::Periodic) => l / 2,
    }
}

/// Closed-form dimension of the reachable state manifold.
pub fn dim_s_formula(protocol: Protocol, l: usize, bc: BoundaryCondition) -> usize {
    match (protocol, bc) {
        (Protocol::SiteDependent, _) => l * (l - 1),
        (Protocol::SiteIndependent, BoundaryCondition::Open) => l * (l - 1) / 2,
        (Protocol::SiteIndependent, BoundaryCondition::Periodic) => l,
    }
}

#[derive(Debug, Clone)]
pub struct ExpressibilityReport {
    pub protocol: Protocol,
    pub bc: BoundaryCondition,
    pub l: usize,
    /// Computed by exact closure.
    pub dim_u: usize,
    /// Computed by exact parity restriction (+1 sector).
    pub dim_u_fixed_parity: usize,
    /// The -1 sector, for the symmetry sanity check.
    pub dim_u_fixed_parity_odd: usize,
    /// Formula-sourced (flagged as such).
    pub dim_g: usize,
    /// `dim_u_fixed_parity_formula - dim_g` (the closed forms are mutually
    /// consistent; asserted in tests).
    pub dim_s: usize,
    pub dim_u_formula: usize,
    pub dim_u_fixed_parity_formula: usize,
    /// True when every computed value matches its closed form.
    pub formulas_match: bool,
    pub generation_rounds: usize,
}

impl ExpressibilityReport {
    pub fn mismatches(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.dim_u != self.dim_u_formula {
            v.push(format!(
                "dim_u computed {} vs formula {}",
                self.dim_u, self.dim_u_formula
            ));
        }
        if self.dim_u_fixed_parity != self.dim_u_fixed_parity_formula {
            v.push(format!(
                "dim_u_fixed_parity computed {} vs formula {}",
                self.dim_u_fixed_parity, self.dim_u_fixed_parity_formula
            ));
        }
        v
    }
}

/// Closure dimensions that deviate from the tabulated closed forms, as
/// settled by the exact computation and confirmed against the dense-matrix
/// route (see `tests/dense_check.rs`):
///
/// * site-independent PBC has dimension `3L-1` for `L ≥ 3` (the closed form
///   `3L-2` undercounts by one; the two parity sectors carry `⌊3L/2⌋` and
///   `⌊3L/2⌋` or `⌊3L/2⌋-1` dimensions for odd/even `L` respectively);
/// * at `L = 2` the wrap bond coincides with the chain bond and the
///   four-mode algebra is not simple, so the site-dependent PBC dimension
///   collapses to 6 and the fixed-parity dimensions to 3.
///
/// The fixed-parity closed forms always refer to the even sector, the
/// sector of the Z-polarized initial state; `⌊3L/2⌋` holds there for every
/// `L ≥ 2`.
pub fn dim_u_verified(protocol: Protocol, l: usize, bc: BoundaryCondition) -> usize {
    match (protocol, bc) {
        (Protocol::SiteIndependent, BoundaryCondition::Periodic) if l >= 3 => 3 * l - 1,
        (Protocol::SiteDependent, BoundaryCondition::Periodic) if l == 2 => 6,
        _ => dim_u_formula(protocol, l, bc),
    }
}

/// Even-sector dimension as settled by computation (deviations at `L = 2`
/// only; see [`dim_u_verified`]).
pub fn dim_u_fixed_parity_verified(protocol: Protocol, l: usize, bc: BoundaryCondition) -> usize {
    if l == 2 {
        match (protocol, bc) {
            (Protocol::SiteDependent, _) => 3,
            (Protocol::SiteIndependent, BoundaryCondition::Open) => 3,
            (Protocol::SiteIndependent, BoundaryCondition::Periodic) => 3,
        }
    } else {
        dim_u_fixed_parity_formula(protocol, l, bc)
    }
}

/// Run the closure and assemble the report for one (protocol, L, bc) cell.
pub fn expressibility_report(
    protocol: Protocol,
    l: usize,
    bc: BoundaryCondition,
) -> Result<ExpressibilityReport> {
    let gens = protocol_generators(protocol, l, bc)?;
    let cap = 4 * (2 * l) * (2 * l); // comfortably above 2L(2L-1)
    let basis = closure(&gens, cap)?;
    let even = parity_restricted_dimension(&basis, 1)?;
    let odd = parity_restricted_dimension(&basis, -1)?;
    let report = ExpressibilityReport {
        protocol,
        bc,
        l,
        dim_u: basis.dimension,
        dim_u_fixed_parity: even,
        dim_u_fixed_parity_odd: odd,
        dim_g: dim_g_formula(protocol, l, bc),
        dim_s: dim_s_formula(protocol, l, bc),
        dim_u_formula: dim_u_formula(protocol, l, bc),
        dim_u_fixed_parity_formula: dim_u_fixed_parity_formula(protocol, l, bc),
        formulas_match: false,
        generation_rounds: basis.generation_rounds,
    };
    let ok = report.dim_u == report.dim_u_formula
        && report.dim_u_fixed_parity == report.dim_u_fixed_parity_formula;
    Ok(ExpressibilityReport {
        formulas_match: ok,
        ..report
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_are_mutually_consistent() {
        // dim_s = dim_u_fixed_parity - dim_g for every cell
        for l in 2..=10 {
            for (p, bc) in [
                (Protocol::SiteDependent, BoundaryCondition::Open),
                (Protocol::SiteDependent, BoundaryCondition::Periodic),
                (Protocol::SiteIndependent, BoundaryCondition::Open),
                (Protocol::SiteIndependent, BoundaryCondition::Periodic),
            ] {
                assert_eq!(
                    dim_s_formula(p, l, bc),
                    dim_u_fixed_parity_formula(p, l, bc) - dim_g_formula(p, l, bc),
                    "inconsistent closed forms at L={l} {p} {bc}"
                );
            }
        }
    }

    #[test]
    fn spec_report_examples() {
        let r = expressibility_report(Protocol::SiteDependent, 4, BoundaryCondition::Open).unwrap();
        assert_eq!(
            (r.dim_u, r.dim_u_fixed_parity, r.dim_g, r.dim_s),
            (28, 28, 16, 12)
        );
        assert!(r.formulas_match, "{:?}", r.mismatches());

        // The tabulated dim_u for site-independent PBC is 3L-2 = 10, but the
        // exact closure (dense-confirmed) settles the dimension at 3L-1 = 11;
        // the report carries both and flags the discrepancy.
        let r = expressibility_report(Protocol::SiteIndependent, 4, BoundaryCondition::Periodic)
            .unwrap();
        assert_eq!(
            (r.dim_u, r.dim_u_fixed_parity, r.dim_g, r.dim_s),
            (11, 6, 2, 4)
        );
        assert_eq!(r.dim_u_formula, 10);
        assert_eq!(
            r.dim_u,
            dim_u_verified(Protocol::SiteIndependent, 4, BoundaryCondition::Periodic)
        );
        assert!(!r.formulas_match);
        assert_eq!(r.mismatches().len(), 1);

        let r =
            expressibility_report(Protocol::SiteIndependent, 6, BoundaryCondition::Open).unwrap();
        assert_eq!(
            (r.dim_u, r.dim_u_fixed_parity, r.dim_g, r.dim_s),
            (36, 36, 21, 15)
        );
        assert!(r.formulas_match, "{:?}", r.mismatches());
    }
}
