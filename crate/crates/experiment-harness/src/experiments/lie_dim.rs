//! `lie-dim` subcommand: dimension table as CSV on standard output.

use fgs_core::BoundaryCondition;
use lie_closure::{expressibility_report, parity_restricted_dimension, Protocol};

use crate::Result;

/// Write the dimension table for `L = lmin..=lmax`. When `parity` is given
/// the table carries that sector's restricted dimension; otherwise both the
/// unrestricted and even-sector dimensions are reported.
pub fn write_table<W: std::io::Write>(
    w: &mut W,
    protocol: Protocol,
    bc: BoundaryCondition,
    lmin: usize,
    lmax: usize,
    parity: Option<i8>,
) -> Result<()> {
    match parity {
        None => writeln!(
            w,
            "protocol,bc,l,dim_u,dim_u_formula,dim_u_fixed_parity,dim_u_fixed_parity_formula,dim_g,dim_s,formulas_match"
        )?,
        Some(_) => writeln!(w, "protocol,bc,l,sector,dim_u_restricted")?,
    }
    for l in lmin..=lmax {
        match parity {
            None => {
                let r = expressibility_report(protocol, l, bc)?;
                writeln!(
                    w,
                    "{},{},{},{},{},{},{},{},{},{}",
                    protocol,
                    bc,
                    l,
                    r.dim_u,
                    r.dim_u_formula,
                    r.dim_u_fixed_parity,
                    r.dim_u_fixed_parity_formula,
                    r.dim_g,
                    r.dim_s,
                    r.formulas_match
                )?;
            }
            Some(sector) => {
                let gens = lie_closure::protocol_generators(protocol, l, bc)?;
                let basis = lie_closure::closure(&gens, 8 * (2 * l) * (2 * l))?;
                let dim = parity_restricted_dimension(&basis, sector)?;
                writeln!(w, "{},{},{},{:+},{}", protocol, bc, l, sector, dim)?;
            }
        }
    }
    Ok(())
}
