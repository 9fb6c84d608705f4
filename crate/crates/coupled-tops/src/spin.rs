//! Single-top angular momentum algebra.
//!
//! A top of size j lives in the (2j+1)-dimensional irrep with J_z eigenbasis
//! |j,m>, m = -j..+j. Basis vectors are ordered by ascending m, so index k
//! holds m = -j + k. Half-integer j is stored exactly as the integer 2j;
//! all matrix elements are then exact ladder coefficients
//!
//! ```text
//! J+|j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>
//! ```
//!
//! with J_x = (J+ + J-)/2 real symmetric and J_y = (J+ - J-)/(2i) purely
//! imaginary Hermitian.

use num_complex::Complex64;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;

/// Spin quantum number stored as 2j so that half-integers are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinJ {
    twice_j: u32,
}

impl SpinJ {
    /// `twice_j` must be at least 1 (j = 1/2 is the smallest top).
    pub fn from_twice(twice_j: u32) -> Result<Self> {
        if twice_j == 0 {
            return Err(Error::InvalidInput(
                "twice_j must be >= 1 (j = 1/2 is the smallest spin)".into(),
            ));
        }
        Ok(SpinJ { twice_j })
    }

    pub fn twice(&self) -> u32 {
        self.twice_j
    }

    pub fn j(&self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    /// Single-top Hilbert-space dimension 2j+1.
    pub fn dim(&self) -> usize {
        self.twice_j as usize + 1
    }

    /// m value at basis index k (ascending order, k = 0 is m = -j).
    pub fn m_value(&self, index: usize) -> f64 {
        index as f64 - self.j()
    }

    /// j(j+1), the Casimir eigenvalue.
    pub fn casimir(&self) -> f64 {
        self.j() * (self.j() + 1.0)
    }
}

impl fmt::Display for SpinJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice_j % 2 == 0 {
            write!(f, "{}", self.twice_j / 2)
        } else {
            write!(f, "{}/2", self.twice_j)
        }
    }
}

/// J_z: real diagonal with entries m.
pub fn jz(j: SpinJ) -> OperatorMatrix {
    let diag: Vec<f64> = (0..j.dim()).map(|k| j.m_value(k)).collect();
    OperatorMatrix::from_real_diag(&diag)
}

/// Ladder coefficient sqrt(j(j+1) - m(m+1)) connecting m -> m+1.
fn ladder(j: SpinJ, k: usize) -> f64 {
    let m = j.m_value(k);
    (j.casimir() - m * (m + 1.0)).sqrt()
}

/// J+: single band at (row, col) = (k+1, k), the <m+1|J+|m> elements.
pub fn jplus(j: SpinJ) -> OperatorMatrix {
    let d = j.dim();
    let mut m = OperatorMatrix::zeros(d);
    for k in 0..d - 1 {
        m.set(k + 1, k, Complex64::new(ladder(j, k), 0.0));
    }
    m
}

/// J-: adjoint of J+.
pub fn jminus(j: SpinJ) -> OperatorMatrix {
    jplus(j).adjoint()
}

/// J_x = (J+ + J-)/2, real symmetric tridiagonal.
pub fn jx(j: SpinJ) -> OperatorMatrix {
    let d = j.dim();
    let mut m = OperatorMatrix::zeros(d);
    for k in 0..d - 1 {
        let half = Complex64::new(0.5 * ladder(j, k), 0.0);
        m.set(k + 1, k, half);
        m.set(k, k + 1, half);
    }
    m
}

/// J_y = (J+ - J-)/(2i), purely imaginary Hermitian tridiagonal.
pub fn jy(j: SpinJ) -> OperatorMatrix {
    let d = j.dim();
    let mut m = OperatorMatrix::zeros(d);
    for k in 0..d - 1 {
        let half = 0.5 * ladder(j, k);
        m.set(k + 1, k, Complex64::new(0.0, -half));
        m.set(k, k + 1, Complex64::new(0.0, half));
    }
    m
}

/// Both transverse components at once.
pub fn jx_jy(j: SpinJ) -> (OperatorMatrix, OperatorMatrix) {
    (jx(j), jy(j))
}

/// Off-diagonal coefficients of J_x (the tridiagonal band), used by the
/// matrix-free Hamiltonian application.
pub(crate) fn jx_band(j: SpinJ) -> Vec<f64> {
    (0..j.dim() - 1).map(|k| 0.5 * ladder(j, k)).collect()
}
