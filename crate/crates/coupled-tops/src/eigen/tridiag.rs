//! Implicit-shift QL iteration on a symmetric tridiagonal matrix.
//!
//! Classic algorithm (EISPACK imtql2 lineage): for each eigenvalue index,
//! Wilkinson-shifted QL sweeps rotate the subdiagonal away; an optional
//! orthogonal accumulator turns the same rotations into eigenvectors.

use crate::error::{Error, Result};
use crate::matrix::RealMat;

/// Hard cap on QL sweeps per eigenvalue; exceeding it means the matrix is
/// pathological (NaNs, overflow) rather than merely ill-conditioned.
const MAX_QL_ITER: usize = 50;

/// Diagonalize the tridiagonal matrix with diagonal `d` (length n) and
/// subdiagonal `e` (length n, `e[i]` couples i and i+1, `e[n-1]` is scratch).
/// On success `d` holds eigenvalues (unsorted) and, if given, `z` columns
/// hold the corresponding eigenvectors (z should start as the identity, or
/// as the basis the tridiagonal was reduced in). Returns the total number
/// of QL sweeps.
pub(crate) fn tridiagonal_ql_implicit(
    d: &mut [f64],
    e: &mut [f64],
    mut z: Option<&mut RealMat>,
) -> Result<usize> {
    let n = d.len();
    assert_eq!(e.len(), n, "subdiagonal must have length n (last entry scratch)");
    if n == 0 {
        return Ok(0);
    }
    e[n - 1] = 0.0;
    let mut total_sweeps = 0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            // First index m >= l whose subdiagonal is negligible.
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            total_sweeps += 1;
            if iter > MAX_QL_ITER {
                return Err(Error::QlNoConvergence {
                    index: l,
                    max_iter: MAX_QL_ITER,
                });
            }

            // Wilkinson shift from the leading 2x2 of the active block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(if g >= 0.0 { 1.0 } else { -1.0 }));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;

            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // Rotation underflowed; deflate and retry the block.
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;

                if let Some(zm) = z.as_deref_mut() {
                    let nn = zm.n;
                    for k in 0..nn {
                        f = zm.get(k, i + 1);
                        zm.set(k, i + 1, s * zm.get(k, i) + c * f);
                        zm.set(k, i, c * zm.get(k, i) - s * f);
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(total_sweeps)
}

/// Eigenvalues of (d, e) sorted ascending, without touching the inputs.
pub(crate) fn tridiagonal_eigenvalues(d: &[f64], e: &[f64]) -> Result<Vec<f64>> {
    let mut dd = d.to_vec();
    let mut ee = vec![0.0; d.len()];
    ee[..e.len().min(d.len())].copy_from_slice(&e[..e.len().min(d.len())]);
    tridiagonal_ql_implicit(&mut dd, &mut ee, None)?;
    dd.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(dd)
}

/// Solve (T - lambda I) x = b for a tridiagonal T by Gaussian elimination
/// with partial pivoting (two-band LU). Used for inverse iteration when a
/// single eigenvector of the Lanczos tridiagonal is needed.
pub(crate) fn tridiagonal_shifted_solve(
    d: &[f64],
    e: &[f64],
    lambda: f64,
    b: &mut Vec<f64>,
) {
    let n = d.len();
    // Bands: lower[i] = e[i-1], diag[i] = d[i]-lambda, upper[i] = e[i];
    // pivoting introduces a second upper band.
    let mut diag: Vec<f64> = d.iter().map(|x| x - lambda).collect();
    let mut upper = vec![0.0; n];
    let mut upper2 = vec![0.0; n];
    for i in 0..n - 1 {
        upper[i] = e[i];
    }
    for i in 0..n - 1 {
        let sub = e[i];
        if sub.abs() > diag[i].abs() {
            // Swap rows i and i+1. Row i+1 holds (sub, diag[i+1], upper[i+1])
            // in columns i, i+1, i+2; row i holds (diag[i], upper[i], 0).
            let elim_diag = diag[i];
            let elim_upper = upper[i];
            diag[i] = sub;
            upper[i] = diag[i + 1];
            if i + 2 < n {
                upper2[i] = upper[i + 1];
            }
            b.swap(i, i + 1);
            let factor = if diag[i] != 0.0 { elim_diag / diag[i] } else { 0.0 };
            diag[i + 1] = elim_upper - factor * upper[i];
            if i + 2 < n {
                upper[i + 1] = -factor * upper2[i];
            }
            b[i + 1] -= factor * b[i];
        } else {
            let factor = if diag[i] != 0.0 { sub / diag[i] } else { 0.0 };
            diag[i + 1] -= factor * upper[i];
            b[i + 1] -= factor * b[i];
        }
    }
    // Back substitution with two upper bands.
    for i in (0..n).rev() {
        let mut acc = b[i];
        if i + 1 < n {
            acc -= upper[i] * b[i + 1];
        }
        if i + 2 < n {
            acc -= upper2[i] * b[i + 2];
        }
        let piv = if diag[i] != 0.0 { diag[i] } else { f64::EPSILON };
        b[i] = acc / piv;
    }
}
