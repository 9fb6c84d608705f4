//! Dense operator matrices in the |m> (single top) and |m,n> (two tops)
//! product bases.
//!
//! Entries are complex because J_y is purely imaginary, but everything
//! built from J_x, J_z and real couplings stays real symmetric; the
//! eigensolvers check that property explicitly before extracting the real
//! part. Matrices here are small (single-site operators, test-size
//! Hamiltonians, reduced density matrices), so storage is a plain row-major
//! `Vec<Complex64>`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest dimension for which a dense two-top operator may be materialized.
/// (2j+1)^2 <= 4096 corresponds to j <= 31.5; larger systems must use the
/// matrix-free Hamiltonian application.
pub const MAX_DENSE_DIM: usize = 4096;

/// Dense square complex matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl OperatorMatrix {
    pub fn zeros(dim: usize) -> Self {
        OperatorMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m.data[r * dim + c] = f(r, c);
            }
        }
        m
    }

    /// Real diagonal matrix.
    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = Complex64::new(*d, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn add(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.dim != other.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.dim != other.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, s: Complex64) -> OperatorMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    pub fn scale_real(&self, s: f64) -> OperatorMatrix {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Matrix product self * other. Naive triple loop in i-k-j order; fine
    /// for the test-size matrices this type is used for.
    pub fn mul(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.dim != other.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(row.iter()) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> OperatorMatrix {
        let n = self.dim;
        Self::from_fn(n, |r, c| self.data[c * n + r].conj())
    }

    pub fn transpose(&self) -> OperatorMatrix {
        let n = self.dim;
        Self::from_fn(n, |r, c| self.data[c * n + r])
    }

    /// Largest entry magnitude (max norm).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// Apply to a complex vector.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for r in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..n {
                acc += self.data[r * n + c] * v[c];
            }
            out[r] = acc;
        }
        Ok(out)
    }

    /// Checks the entries are exactly real and exactly symmetric and returns
    /// the real part. Operators assembled from J_x, J_z and Kronecker
    /// products are bitwise symmetric, so an exact comparison is the honest
    /// test; anything else indicates the caller built the wrong object.
    pub(crate) fn to_real_symmetric(&self) -> Result<RealMat> {
        let n = self.dim;
        for r in 0..n {
            for c in 0..n {
                let z = self.data[r * n + c];
                if z.im != 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "matrix is not real: entry ({r},{c}) has imaginary part {}",
                        z.im
                    )));
                }
                if z.re != self.data[c * n + r].re {
                    return Err(Error::InvalidInput(format!(
                        "matrix is not symmetric at ({r},{c})"
                    )));
                }
            }
        }
        Ok(RealMat {
            n,
            data: self.data.iter().map(|z| z.re).collect(),
        })
    }

    /// Max norm of the commutator [a, b] = ab - ba.
    pub fn commutator_max_abs(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<f64> {
        let ab = a.mul(b)?;
        let ba = b.mul(a)?;
        Ok(ab.sub(&ba)?.max_abs())
    }
}

/// Kronecker product. Index convention is row major with the first factor
/// slow: out[(r1*db + r2), (c1*db + c2)] = a[r1,c1] * b[r2,c2], so for spin
/// operators the composite index is m_index * dim_2 + n_index.
pub fn kron(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    let da = a.dim();
    let db = b.dim();
    let dim = da
        .checked_mul(db)
        .ok_or(Error::DenseCapExceeded {
            dim: usize::MAX,
            max: MAX_DENSE_DIM,
        })?;
    if dim > MAX_DENSE_DIM {
        return Err(Error::DenseCapExceeded {
            dim,
            max: MAX_DENSE_DIM,
        });
    }
    let mut out = OperatorMatrix::zeros(dim);
    for r1 in 0..da {
        for c1 in 0..da {
            let f = a.get(r1, c1);
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for r2 in 0..db {
                for c2 in 0..db {
                    out.set(r1 * db + r2, c1 * db + c2, f * b.get(r2, c2));
                }
            }
        }
    }
    Ok(out)
}

/// Dense real square matrix used internally by the symmetric eigensolvers.
#[derive(Debug, Clone)]
pub(crate) struct RealMat {
    pub n: usize,
    pub data: Vec<f64>,
}

impl RealMat {
    pub fn zeros(n: usize) -> Self {
        RealMat {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.n + c] = v;
    }

    pub fn apply(&self, v: &[f64], out: &mut [f64]) {
        let n = self.n;
        for r in 0..n {
            let row = &self.data[r * n..(r + 1) * n];
            let mut acc = 0.0;
            for (a, x) in row.iter().zip(v.iter()) {
                acc += a * x;
            }
            out[r] = acc;
        }
    }

    /// Column `c` as a vector.
    pub fn column(&self, c: usize) -> Vec<f64> {
        (0..self.n).map(|r| self.get(r, c)).collect()
    }
}
