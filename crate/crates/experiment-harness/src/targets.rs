//! Target-Hamiltonian sampling with the degeneracy / parity retry policy.
//!
//! Random draws whose ground space is degenerate, or whose ground state
//! lives in the odd parity sector (unreachable from the Z-polarized initial
//! state), are resampled with a derived seed, bounded at 100 attempts.

use fgs_core::{
    build_cluster, build_ising, build_long_range, random_local_quadratic,
    random_symmetric_quadratic, BoundaryCondition, FgsError, QuadraticHamiltonian,
};

use crate::campaign::derive_seed;
use crate::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TargetFamily {
    Ising,
    RandomSymmetric,
    LongRange { alpha: f64 },
    LocalGeneric { k: usize },
    Cluster { k: usize },
}

impl TargetFamily {
    pub fn validate_name(name: &str) -> Result<()> {
        match name {
            "ising" | "random_symmetric" | "long_range" | "local_generic" | "cluster" => Ok(()),
            other => Err(HarnessError::Config(format!(
                "unknown target family '{other}'"
            ))),
        }
    }

    pub fn is_random(&self) -> bool {
        matches!(
            self,
            TargetFamily::RandomSymmetric | TargetFamily::LocalGeneric { .. }
        )
    }

    pub fn label(&self) -> String {
        match self {
            TargetFamily::Ising => "ising".into(),
            TargetFamily::RandomSymmetric => "random_symmetric".into(),
            TargetFamily::LongRange { alpha } => format!("long_range_a{alpha}"),
            TargetFamily::LocalGeneric { k } => format!("local_generic_k{k}"),
            TargetFamily::Cluster { k } => format!("cluster_k{k}"),
        }
    }

    fn build_once(
        &self,
        l: usize,
        bc: BoundaryCondition,
        seed: u64,
    ) -> Result<QuadraticHamiltonian> {
        Ok(match self {
            TargetFamily::Ising => build_ising(l, bc)?,
            TargetFamily::RandomSymmetric => random_symmetric_quadratic(l, seed),
            TargetFamily::LongRange { alpha } => build_long_range(l, *alpha)?,
            TargetFamily::LocalGeneric { k } => random_local_quadratic(l, *k, seed)?,
            TargetFamily::Cluster { k } => build_cluster(l, *k)?,
        })
    }

    /// Build a target whose ground state is unique and even-parity.
    pub fn build(
        &self,
        l: usize,
        bc: BoundaryCondition,
        seed: u64,
    ) -> Result<QuadraticHamiltonian> {
        for attempt in 0..100u64 {
            let s = if attempt == 0 {
                seed
            } else {
                derive_seed(seed, &["resample", &attempt.to_string()])
            };
            let h = self.build_once(l, bc, s)?;
            match fgs_core::ground_state_covariance(&h) {
                Ok(g) => {
                    if fgs_core::parity(&g)? == 1 {
                        return Ok(h);
                    }
                    if !self.is_random() {
                        return Err(HarnessError::Sampling(format!(
                            "{} ground state has odd parity",
                            self.label()
                        )));
                    }
                }
                Err(FgsError::DegenerateGroundSpace(_)) if self.is_random() => {}
                Err(e) => return Err(e.into()),
            }
        }
        Err(HarnessError::Sampling(format!(
            "{}: no even-parity non-degenerate draw in 100 attempts (L={l})",
            self.label()
        )))
    }
}

/// Expand family names from a config into concrete parameterized families.
pub fn expand_families(
    names: &[String],
    alphas: &[f64],
    ks: &[usize],
    l: usize,
) -> Result<Vec<TargetFamily>> {
    let default_ks: Vec<usize> = (0..(l / 2).saturating_sub(1).max(1)).collect();
    let ks = if ks.is_empty() { &default_ks } else { ks };
    let mut out = Vec::new();
    for name in names {
        match name.as_str() {
            "ising" => out.push(TargetFamily::Ising),
            "random_symmetric" => out.push(TargetFamily::RandomSymmetric),
            "long_range" => {
                for &a in alphas {
                    out.push(TargetFamily::LongRange { alpha: a });
                }
            }
            "local_generic" => {
                for &k in ks {
                    if k <= l.saturating_sub(2) {
                        out.push(TargetFamily::LocalGeneric { k });
                    }
                }
            }
            "cluster" => {
                for &k in ks {
                    if k <= l.saturating_sub(2) {
                        out.push(TargetFamily::Cluster { k });
                    }
                }
            }
            other => {
                return Err(HarnessError::Config(format!(
                    "unknown target family '{other}'"
                )))
            }
        }
    }
    Ok(out)
}
