//! Cross-validation of the exact closure against a dense-matrix route:
//! the same generators are closed under commutators as dense complex
//! matrices with floating-point rank decisions, and parity restrictions are
//! compared against dense projector ranks.

use exact_oracle::PauliOp;
use fgs_core::BoundaryCondition;
use lie_closure::{
    closure, parity_restricted_dimension, protocol_generators, OperatorSum, Protocol,
};
use num_complex::Complex64;

/// Dense Hermitian part `H` of an `i·H` element.
fn to_dense(op: &OperatorSum) -> Vec<Complex64> {
    let l = op.sites();
    let dim = 1usize << l;
    let mut m = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (x, z, coeff) in op.terms_f64() {
        let w = (x & z).count_ones() % 4;
        let phase = match w {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        let p = PauliOp { x, z, phase };
        for s in 0..dim {
            let sign = if ((s as u64 & p.z).count_ones() & 1) == 0 {
                1.0
            } else {
                -1.0
            };
            m[(s ^ p.x as usize) * dim + s] += coeff * p.phase * sign;
        }
    }
    m
}

fn commutator_dense(a: &[Complex64], b: &[Complex64], dim: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..dim {
                acc += a[r * dim + k] * b[k * dim + c] - b[r * dim + k] * a[k * dim + c];
            }
            out[r * dim + c] = acc;
        }
    }
    out
}

/// Incremental orthonormal span over C^{dim²} with Gram-Schmidt.
struct Span {
    basis: Vec<Vec<Complex64>>,
}

impl Span {
    fn new() -> Self {
        Self { basis: Vec::new() }
    }
    fn insert(&mut self, mut v: Vec<Complex64>) -> bool {
        // normalize first so the dependence threshold is relative
        let norm0: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm0 < 1e-12 {
            return false;
        }
        for z in &mut v {
            *z /= norm0;
        }
        for _ in 0..2 {
            for b in &self.basis {
                let mut ip = Complex64::new(0.0, 0.0);
                for (x, y) in b.iter().zip(v.iter()) {
                    ip += x.conj() * y;
                }
                for (y, x) in v.iter_mut().zip(b.iter()) {
                    *y -= ip * x;
                }
            }
        }
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-7 {
            return false;
        }
        for z in &mut v {
            *z /= norm;
        }
        self.basis.push(v);
        true
    }
    fn rank(&self) -> usize {
        self.basis.len()
    }
}

fn dense_closure_dim(gens: &[OperatorSum]) -> usize {
    let l = gens[0].sites();
    let dim = 1usize << l;
    let mut span = Span::new();
    let mut mats: Vec<Vec<Complex64>> = Vec::new();
    let mut frontier: Vec<usize> = Vec::new();
    for g in gens {
        let m = to_dense(g);
        if span.insert(m.clone()) {
            frontier.push(mats.len());
            mats.push(m);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        let current = mats.len();
        for &i in &frontier {
            for j in 0..current {
                // [iH1, iH2] = i·(i[H1,H2]); track H parts: H3 = i[H1,H2]
                let c = commutator_dense(&mats[i], &mats[j], dim);
                let mut h3: Vec<Complex64> =
                    c.iter().map(|z| Complex64::new(0.0, 1.0) * z).collect();
                let norm: f64 = h3.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if norm < 1e-10 {
                    continue;
                }
                // store normalized: scaling never changes the generated span
                for z in &mut h3 {
                    *z /= norm;
                }
                if span.insert(h3.clone()) {
                    next.push(mats.len());
                    mats.push(h3);
                }
            }
        }
        frontier = next;
    }
    span.rank()
}

/// Rank of `{π_s H_i π_s}` with the dense parity projector.
fn dense_sector_rank(basis: &[OperatorSum], sector: i8) -> usize {
    let l = basis[0].sites();
    let dim = 1usize << l;
    let mut span = Span::new();
    let mut rank = 0;
    for op in basis {
        let m = to_dense(op);
        let mut proj = vec![Complex64::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                let pr = if (r.count_ones() % 2 == 0) == (sector == 1) {
                    1.0
                } else {
                    0.0
                };
                let pc = if (c.count_ones() % 2 == 0) == (sector == 1) {
                    1.0
                } else {
                    0.0
                };
                proj[r * dim + c] = m[r * dim + c] * pr * pc;
            }
        }
        if span.insert(proj) {
            rank += 1;
        }
    }
    rank
}

#[test]
fn closure_dimension_matches_dense_route() {
    for (protocol, bc, lmax) in [
        (Protocol::SiteDependent, BoundaryCondition::Open, 4usize),
        (Protocol::SiteDependent, BoundaryCondition::Periodic, 4),
        (Protocol::SiteIndependent, BoundaryCondition::Open, 6),
        (Protocol::SiteIndependent, BoundaryCondition::Periodic, 6),
    ] {
        for l in 2..=lmax {
            let gens = protocol_generators(protocol, l, bc).unwrap();
            let exact = closure(&gens, 4 * (2 * l) * (2 * l)).unwrap();
            let dense = dense_closure_dim(&gens);
            println!(
                "{protocol} {bc} L={l}: exact {} dense {}",
                exact.dimension, dense
            );
            assert_eq!(
                exact.dimension, dense,
                "{protocol} {bc} L={l}: exact {} vs dense {}",
                exact.dimension, dense
            );
        }
    }
}

#[test]
fn parity_quotient_matches_dense_projection() {
    for (protocol, bc, lmax) in [
        (Protocol::SiteDependent, BoundaryCondition::Open, 4usize),
        (Protocol::SiteDependent, BoundaryCondition::Periodic, 4),
        (Protocol::SiteIndependent, BoundaryCondition::Open, 6),
        (Protocol::SiteIndependent, BoundaryCondition::Periodic, 6),
    ] {
        for l in 2..=lmax {
            let gens = protocol_generators(protocol, l, bc).unwrap();
            let basis = closure(&gens, 4 * (2 * l) * (2 * l)).unwrap();
            for sector in [1i8, -1] {
                let quotient = parity_restricted_dimension(&basis, sector).unwrap();
                let dense = dense_sector_rank(&basis.basis, sector);
                println!(
                    "{protocol} {bc} L={l} sector {sector:+}: quotient {quotient} dense {dense}"
                );
                assert_eq!(quotient, dense, "{protocol} {bc} L={l} sector {sector:+}");
            }
        }
    }
}
