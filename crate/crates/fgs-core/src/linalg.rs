//! Small dense linear-algebra kernels: a cyclic Jacobi eigensolver for
//! Hermitian matrices and an LU determinant.
//!
//! Jacobi is chosen over faster reductions because the accumulated eigenvector
//! matrix is a product of exact unitary rotations, which keeps the orthogonal
//! evolution operators built on top of it orthogonal to machine precision.
//! The matrices here are at most `2L × 2L`, so the O(n³) sweeps are cheap.

use ndarray::Array2;
use num_complex::Complex64;

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending, columns of
/// `vectors` the corresponding orthonormal eigenvectors.
pub struct HermitianEig {
    pub values: Vec<f64>,
    pub vectors: Array2<Complex64>,
}

/// Cyclic Jacobi for complex Hermitian matrices.
pub fn hermitian_eig(a: &Array2<Complex64>) -> HermitianEig {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "hermitian_eig: matrix must be square");
    let mut m = a.clone();
    let mut v = Array2::<Complex64>::eye(n);

    let norm: f64 = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let tol = f64::EPSILON * norm.max(f64::MIN_POSITIVE);

    for _sweep in 0..100 {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r <= tol * 1e-2 {
                    continue;
                }
                // Absorb the phase of the pivot, then a real Jacobi rotation.
                let phase = apq / r; // e^{iφ}
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J columns: col p ← c·e_p - s·conj(phase)·e_q,
                //            col q ← s·phase·e_p + c·e_q   (unitary)
                let jp = (Complex64::new(c, 0.0), -phase.conj() * s);
                let jq = (phase * s, Complex64::new(c, 0.0));
                // m ← J† m J: update columns then rows.
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * jp.0 + mkq * jp.1;
                    m[(k, q)] = mkp * jq.0 + mkq * jq.1;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = jp.0.conj() * mpk + jp.1.conj() * mqk;
                    m[(q, k)] = jq.0.conj() * mpk + jq.1.conj() * mqk;
                }
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * jp.0 + vkq * jp.1;
                    v[(k, q)] = vkp * jq.0 + vkq * jq.1;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = Array2::<Complex64>::zeros((n, n));
    for (col, &i) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, col)] = v[(k, i)];
        }
    }
    HermitianEig { values, vectors }
}

/// Eigenvalues of a real symmetric matrix, ascending.
pub fn symmetric_eigenvalues(a: &Array2<f64>) -> Vec<f64> {
    let n = a.nrows();
    let c = Array2::from_shape_fn((n, n), |(j, k)| {
        Complex64::new(0.5 * (a[(j, k)] + a[(k, j)]), 0.0)
    });
    hermitian_eig(&c).values
}

/// Determinant via LU with partial pivoting. Used as an independent
/// cross-check of the Pfaffian.
pub fn det_lu(a: &Array2<f64>) -> f64 {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let mut m = a.clone();
    let mut det = 1.0;
    for k in 0..n {
        let mut piv = k;
        let mut best = m[(k, k)].abs();
        for r in (k + 1)..n {
            if m[(r, k)].abs() > best {
                best = m[(r, k)].abs();
                piv = r;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if piv != k {
            for c in 0..n {
                let t = m[(k, c)];
                m[(k, c)] = m[(piv, c)];
                m[(piv, c)] = t;
            }
            det = -det;
        }
        det *= m[(k, k)];
        for r in (k + 1)..n {
            let f = m[(r, k)] / m[(k, k)];
            for c in k..n {
                m[(r, c)] -= f * m[(k, c)];
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_hermitian(n: usize, seed: u64) -> Array2<Complex64> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut m = Array2::<Complex64>::zeros((n, n));
        for j in 0..n {
            m[(j, j)] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
            for k in (j + 1)..n {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(j, k)] = z;
                m[(k, j)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn jacobi_residual_and_orthogonality() {
        for &n in &[2usize, 5, 16, 31] {
            let a = random_hermitian(n, 7 + n as u64);
            let eig = hermitian_eig(&a);
            // residual ‖A v - λ v‖ per eigenpair
            for c in 0..n {
                let mut res: f64 = 0.0;
                for j in 0..n {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for k in 0..n {
                        acc += a[(j, k)] * eig.vectors[(k, c)];
                    }
                    acc -= eig.vectors[(j, c)] * eig.values[c];
                    res += acc.norm_sqr();
                }
                assert!(res.sqrt() < 1e-12, "residual {res:.3e} at n={n}, col {c}");
            }
            // V† V = I
            for c1 in 0..n {
                for c2 in 0..n {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for k in 0..n {
                        acc += eig.vectors[(k, c1)].conj() * eig.vectors[(k, c2)];
                    }
                    let target = if c1 == c2 { 1.0 } else { 0.0 };
                    assert!((acc.re - target).abs() < 1e-13 && acc.im.abs() < 1e-13);
                }
            }
            // ascending
            for c in 1..n {
                assert!(eig.values[c] >= eig.values[c - 1]);
            }
        }
    }

    #[test]
    fn det_lu_known_values() {
        let a = ndarray::array![[1.0, 2.0], [3.0, 4.0]];
        assert!((det_lu(&a) + 2.0).abs() < 1e-14);
        let id = Array2::<f64>::eye(5);
        assert!((det_lu(&id) - 1.0).abs() < 1e-14);
    }
}
