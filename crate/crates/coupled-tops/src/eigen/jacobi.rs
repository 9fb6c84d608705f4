//! Cyclic Jacobi diagonalization.
//!
//! Deliberately independent of the Householder/QL path so the two can vouch
//! for each other: Jacobi annihilates one off-diagonal pair at a time with
//! explicit 2x2 rotations and converges unconditionally on symmetric input.
//! Quadratic cost per sweep limits it to modest sizes; it is the oracle the
//! production solvers are tested against, not the production path.

use crate::error::{Error, Result};
use crate::matrix::RealMat;

/// Jacobi is an oracle for test-size problems only.
pub const JACOBI_MAX_DIM: usize = 512;

/// Stop once the off-diagonal Frobenius norm falls below this.
const OFF_DIAG_TARGET: f64 = 1e-13;

const MAX_SWEEPS: usize = 60;

/// Frobenius norm of the off-diagonal part.
fn off_diagonal_norm(a: &RealMat) -> f64 {
    let n = a.n;
    let mut acc = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            acc += 2.0 * a.get(p, q) * a.get(p, q);
        }
    }
    acc.sqrt()
}

/// Diagonalize a symmetric matrix by cyclic Jacobi sweeps. Returns
/// (eigenvalues ascending, eigenvector columns in matching order, sweeps).
pub(crate) fn jacobi_eigen(a: &RealMat) -> Result<(Vec<f64>, RealMat, usize)> {
    let n = a.n;
    if n > JACOBI_MAX_DIM {
        return Err(Error::DenseCapExceeded {
            dim: n,
            max: JACOBI_MAX_DIM,
        });
    }
    let mut a = a.clone();
    let mut v = RealMat::identity(n);
    let mut sweeps = 0;

    while off_diagonal_norm(&a) >= OFF_DIAG_TARGET {
        sweeps += 1;
        if sweeps > MAX_SWEEPS {
            return Err(Error::NonConvergence {
                iterations: sweeps,
                best_residual: off_diagonal_norm(&a),
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                // Rotation angle that annihilates a_pq.
                let tau = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }

    // Sort ascending, carrying the eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &k| a.get(i, i).partial_cmp(&a.get(k, k)).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| a.get(i, i)).collect();
    let mut vecs = RealMat::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vecs.set(r, new_col, v.get(r, old_col));
        }
    }
    Ok((vals, vecs, sweeps))
}
