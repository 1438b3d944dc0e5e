//! Pfaffian of a real antisymmetric matrix via Householder tridiagonalization.
//!
//! The matrix is reduced to antisymmetric tridiagonal form `T = Qᵀ A Q` by a
//! sequence of Householder reflectors; then `Pf(A) = det(Q) · t_{1,2} t_{3,4} ⋯`
//! with `det(Q)` accumulated explicitly from the reflector determinants
//! (each nontrivial reflector contributes −1). This is numerically stable,
//! unlike naive cofactor recursion.

use ndarray::Array2;

use crate::conventions::ANTISYM_TOL;
use crate::{FgsError, Result};

/// `Pf(a)` for a real antisymmetric matrix of even dimension.
pub fn pfaffian(a: &Array2<f64>) -> Result<f64> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(FgsError::SizeMismatch(n, a.ncols()));
    }
    if n % 2 != 0 {
        return Err(FgsError::OddDimension(n));
    }
    let mut dev: f64 = 0.0;
    let scale: f64 = a.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    for j in 0..n {
        for k in j..n {
            dev = dev.max((a[(j, k)] + a[(k, j)]).abs());
        }
    }
    if dev > ANTISYM_TOL * scale {
        return Err(FgsError::NotAntisymmetric(dev));
    }
    if n == 0 {
        return Ok(1.0);
    }

    let mut m = a.clone();
    let mut det_q = 1.0;

    for k in 0..n.saturating_sub(2) {
        // Householder vector for column k below the subdiagonal.
        let mut alpha: f64 = 0.0;
        for j in (k + 1)..n {
            alpha += m[(j, k)] * m[(j, k)];
        }
        alpha = alpha.sqrt();
        if alpha == 0.0 {
            continue;
        }
        let x0 = m[(k + 1, k)];
        // Already tridiagonal in this column.
        let mut rest: f64 = 0.0;
        for j in (k + 2)..n {
            rest += m[(j, k)] * m[(j, k)];
        }
        if rest.sqrt() <= f64::EPSILON * alpha {
            continue;
        }
        let sign = if x0 >= 0.0 { 1.0 } else { -1.0 };
        let mut v = vec![0.0; n];
        v[k + 1] = x0 + sign * alpha;
        for j in (k + 2)..n {
            v[j] = m[(j, k)];
        }
        let vnorm_sq: f64 = v.iter().map(|x| x * x).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        det_q = -det_q;

        // m ← H m H with H = I - 2 v vᵀ / (vᵀv): two rank-1 sweeps keep the
        // antisymmetry exact up to rounding.
        let beta = 2.0 / vnorm_sq;
        // w = m · v
        let mut w = vec![0.0; n];
        for j in 0..n {
            let mut acc = 0.0;
            for l in (k + 1)..n {
                acc += m[(j, l)] * v[l];
            }
            w[j] = acc;
        }
        // m ← m - beta (w vᵀ - v wᵀ) + beta² (vᵀ w = 0 for antisymmetric m) ...
        // For antisymmetric m, vᵀ m v = 0, so H m H = m - beta v (vᵀ m) - beta (m v) vᵀ
        // with (vᵀ m)_j = -w_j:
        for j in 0..n {
            for l in 0..n {
                m[(j, l)] += beta * (v[j] * w[l] - w[j] * v[l]);
            }
        }
    }

    let mut pf = det_q;
    let mut i = 0;
    while i < n {
        pf *= m[(i, i + 1)];
        i += 2;
    }
    Ok(pf)
}
