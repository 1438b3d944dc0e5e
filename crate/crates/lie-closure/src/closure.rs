//! Breadth-first Lie-algebra closure with an exact incremental row reducer.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use crate::sum::{Key, OperatorSum};
use crate::{LieError, Result};

/// Exact Gaussian elimination over the Pauli-string coordinate space.
/// Rows are kept normalized (unit leading coefficient, lexicographic pivot
/// order) and fully back-substituted, so the stored basis is reproducible
/// regardless of platform.
#[derive(Debug, Default)]
pub struct Reducer {
    rows: Vec<OperatorSum>,
    pivots: BTreeMap<Key, usize>,
}

impl Reducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[OperatorSum] {
        &self.rows
    }

    /// Reduce `op` against the current rows (returns the residual).
    pub fn reduce(&self, mut op: OperatorSum) -> OperatorSum {
        loop {
            let Some((key, coeff)) = op.leading().map(|(k, c)| (*k, c.clone())) else {
                return op;
            };
            match self.pivots.get(&key) {
                Some(&row) => op.sub_scaled(&self.rows[row], &coeff),
                None => return op,
            }
        }
    }

    /// Insert if independent; returns true when the rank grew.
    pub fn insert(&mut self, op: OperatorSum) -> bool {
        let mut red = self.reduce(op);
        let Some((key, coeff)) = red.leading().map(|(k, c)| (*k, c.clone())) else {
            return false;
        };
        let inv = BigRational::one() / coeff;
        red.scale(&inv);
        let idx = self.rows.len();
        // back-substitute into existing rows so the basis stays canonical
        for row in self.rows.iter_mut() {
            if let Some(c) = row.coeff(&key).cloned() {
                row.sub_scaled(&red, &c);
            }
        }
        self.pivots.insert(key, idx);
        self.rows.push(red);
        true
    }
}

/// A row-reduced basis of a dynamical Lie algebra.
#[derive(Debug)]
pub struct LieBasis {
    pub basis: Vec<OperatorSum>,
    pub dimension: usize,
    pub generation_rounds: usize,
    sites: usize,
}

impl LieBasis {
    pub fn sites(&self) -> usize {
        self.sites
    }

    /// Exact post-closure verification that every pairwise bracket stays in
    /// the span.
    pub fn verify_closed(&self) -> Result<bool> {
        let mut red = Reducer::new();
        for row in &self.basis {
            red.insert(row.clone());
        }
        for i in 0..self.basis.len() {
            for j in (i + 1)..self.basis.len() {
                let br = self.basis[i].commutator(&self.basis[j])?;
                if !red.reduce(br).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Breadth-first bracket generation: maintain a row-reduced exact basis,
/// bracket every (newly added, basis) pair per round, insert independent
/// results, stop when a full round adds nothing.
pub fn closure(generators: &[OperatorSum], max_dim: usize) -> Result<LieBasis> {
    if generators.is_empty() {
        return Err(LieError::NoGenerators);
    }
    let sites = generators[0].sites();
    let mut red = Reducer::new();
    let mut new_rows: Vec<usize> = Vec::new();
    for g in generators {
        if g.sites() != sites {
            return Err(LieError::SiteMismatch(g.sites(), sites));
        }
        let before = red.rank();
        if red.insert(g.clone()) {
            new_rows.push(before);
        }
        if red.rank() > max_dim {
            return Err(LieError::DimensionCapExceeded(max_dim));
        }
    }

    let mut rounds = 0;
    while !new_rows.is_empty() {
        rounds += 1;
        let frontier = std::mem::take(&mut new_rows);
        let current = red.rank();
        for &i in &frontier {
            for j in 0..current {
                let br = red.rows()[i].commutator(&red.rows()[j])?;
                if br.is_zero() {
                    continue;
                }
                let before = red.rank();
                if red.insert(br) {
                    new_rows.push(before);
                    if red.rank() > max_dim {
                        return Err(LieError::DimensionCapExceeded(max_dim));
                    }
                }
            }
        }
    }

    let dimension = red.rank();
    Ok(LieBasis {
        basis: red.rows().to_vec(),
        dimension,
        generation_rounds: rounds,
        sites,
    })
}
