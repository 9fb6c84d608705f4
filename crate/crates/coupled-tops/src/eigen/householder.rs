//! Householder reduction of a real symmetric matrix to tridiagonal form,
//! with accumulation of the orthogonal transformation (tred2 lineage).

use crate::matrix::RealMat;

/// Reduce `a` (symmetric, overwritten) to tridiagonal form. Returns
/// (d, e) with d the diagonal and e the subdiagonal (e[i] couples i and
/// i+1, e[n-1] unused scratch). On return `a` holds the accumulated
/// orthogonal matrix Q with Q^T A Q tridiagonal, so eigenvectors of the
/// tridiagonal map back through it.
pub(crate) fn householder_tridiagonalize(a: &mut RealMat) -> (Vec<f64>, Vec<f64>) {
    let n = a.n;
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    if n == 0 {
        return (d, e);
    }

    for j in 0..n {
        d[j] = a.get(n - 1, j);
    }

    for i in (1..n).rev() {
        // Scale to avoid under/overflow, accumulate the Householder vector
        // in d[0..i].
        let mut h = 0.0;
        let mut scale = 0.0;
        for k in 0..i {
            scale += d[k].abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = a.get(i - 1, j);
                a.set(i, j, 0.0);
                a.set(j, i, 0.0);
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for item in e.iter_mut().take(i) {
                *item = 0.0;
            }

            // Apply the similarity transformation to the remaining rows.
            for j in 0..i {
                let f = d[j];
                a.set(j, i, f);
                let mut g = e[j] + a.get(j, j) * f;
                for k in j + 1..i {
                    g += a.get(k, j) * d[k];
                    e[k] += a.get(k, j) * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    let val = a.get(k, j) - (f * e[k] + g * d[k]);
                    a.set(k, j, val);
                }
                d[j] = a.get(i - 1, j);
                a.set(i, j, 0.0);
            }
        }
        d[i] = h;
    }

    // Accumulate the transformations.
    for i in 0..n - 1 {
        a.set(n - 1, i, a.get(i, i));
        a.set(i, i, 1.0);
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = a.get(k, i + 1) / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += a.get(k, i + 1) * a.get(k, j);
                }
                for k in 0..=i {
                    let val = a.get(k, j) - g * d[k];
                    a.set(k, j, val);
                }
            }
        }
        for k in 0..=i {
            a.set(k, i + 1, 0.0);
        }
    }
    for j in 0..n {
        d[j] = a.get(n - 1, j);
        a.set(n - 1, j, 0.0);
    }
    a.set(n - 1, n - 1, 1.0);
    e[0] = 0.0;

    // Shift e so that e[i] couples i and i+1 (tred2 leaves it at i-1..i).
    for i in 0..n - 1 {
        e[i] = e[i + 1];
    }
    e[n - 1] = 0.0;
    (d, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::SplitMix64;

    #[test]
    fn tridiagonalization_preserves_symmetric_action() {
        // Verify Q^T A Q = T by rebuilding A from Q and T.
        let n = 6;
        let mut rng = SplitMix64::new(99);
        let mut a = RealMat::zeros(n);
        for r in 0..n {
            for c in 0..=r {
                let v = rng.next_f64() - 0.5;
                a.set(r, c, v);
                a.set(c, r, v);
            }
        }
        let orig = a.clone();
        let (d, e) = householder_tridiagonalize(&mut a);
        let q = a; // now holds the accumulated transformation

        // Rebuild: A' = Q T Q^T.
        let mut t = RealMat::zeros(n);
        for i in 0..n {
            t.set(i, i, d[i]);
            if i + 1 < n {
                t.set(i, i + 1, e[i]);
                t.set(i + 1, i, e[i]);
            }
        }
        let mut qt = RealMat::zeros(n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += q.get(r, k) * t.get(k, c);
                }
                qt.set(r, c, acc);
            }
        }
        for r in 0..n {
            for c in 0..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += qt.get(r, k) * q.get(c, k);
                }
                assert!(
                    (acc - orig.get(r, c)).abs() < 1e-12,
                    "entry ({r},{c}): {acc} vs {}",
                    orig.get(r, c)
                );
            }
        }
    }
}
