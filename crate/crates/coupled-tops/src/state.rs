//! Pure states of the two-top system.
//!
//! Amplitudes live in the product basis |m,n> with the composite index
//! m_index * (2j+1) + n_index (first top slow). Ground states of the real
//! symmetric Hamiltonian are real, but states may acquire complex phases
//! under local unitaries, so amplitudes are stored as Complex64 throughout.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spin::SpinJ;

/// Normalized pure state of two tops of equal size j.
#[derive(Debug, Clone)]
pub struct QuantumState {
    j: SpinJ,
    amps: Vec<Complex64>,
}

impl QuantumState {
    const NORM_TOL: f64 = 1e-10;

    /// Build from complex amplitudes; the length must be (2j+1)^2 and the
    /// norm must already be 1 to within 1e-10.
    pub fn new(j: SpinJ, amps: Vec<Complex64>) -> Result<Self> {
        let dim = j.dim() * j.dim();
        if amps.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                got: amps.len(),
            });
        }
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::InvalidInput(format!(
                "state norm {norm} deviates from 1 by more than {}",
                Self::NORM_TOL
            )));
        }
        Ok(QuantumState { j, amps })
    }

    /// Build from a real vector (eigensolver output), normalizing it.
    pub fn from_real(j: SpinJ, v: &[f64]) -> Result<Self> {
        let dim = j.dim() * j.dim();
        if v.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                got: v.len(),
            });
        }
        let norm = crate::util::norm2(v);
        if norm == 0.0 {
            return Err(Error::InvalidInput("cannot normalize the zero vector".into()));
        }
        let amps = v.iter().map(|x| Complex64::new(x / norm, 0.0)).collect();
        Ok(QuantumState { j, amps })
    }

    pub fn j(&self) -> SpinJ {
        self.j
    }

    /// Total Hilbert-space dimension (2j+1)^2.
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Amplitude of |m_index, n_index>.
    pub fn amp(&self, m_index: usize, n_index: usize) -> Complex64 {
        self.amps[m_index * self.j.dim() + n_index]
    }

    /// <self|other>.
    pub fn overlap(&self, other: &QuantumState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Amplitudes with the two tops exchanged: (m,n) -> (n,m).
    pub fn swapped(&self) -> QuantumState {
        let d = self.j.dim();
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for m in 0..d {
            for n in 0..d {
                amps[n * d + m] = self.amps[m * d + n];
            }
        }
        QuantumState { j: self.j, amps }
    }
}
