//! The coupled-tops Hamiltonian
//!
//! ```text
//! H = J_x1 + J_x2 + (mu / j) * J_z1 J_z2
//! ```
//!
//! for two tops of equal size j, in units where the transverse field and
//! hbar are 1. The coupling carries the 1/j so that the classical limit
//! (L = J/j on unit spheres) has energy L_x1 + L_x2 + mu L_z1 L_z2
//! independent of j.
//!
//! The Hamiltonian is real symmetric in the |m,n> product basis. Besides a
//! dense form (available up to `MAX_DENSE_DIM`), the handle carries the
//! tridiagonal J_x band and the J_z diagonal so that H*v costs O(dim)
//! without materializing anything.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{kron, OperatorMatrix, MAX_DENSE_DIM};
use crate::spin::{self, SpinJ};
use crate::state::QuantumState;

/// Model parameters: top size j and dimensionless coupling mu.
///
/// mu >= 0 is the regime of interest; negative mu is accepted (the algebra
/// goes through unchanged) and flagged by `out_of_range_mu` so reports can
/// mark it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub j: SpinJ,
    pub mu: f64,
}

impl ModelParams {
    pub fn new(j: SpinJ, mu: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::InvalidInput(format!("mu must be finite, got {mu}")));
        }
        Ok(ModelParams { j, mu })
    }

    /// True when mu lies outside the mu >= 0 regime the model is studied in.
    pub fn out_of_range_mu(&self) -> bool {
        self.mu < 0.0
    }
}

/// Assembled Hamiltonian for one (j, mu).
///
/// Immutable after construction; the dense matrix is materialized lazily on
/// first request and cached.
pub struct HamiltonianHandle {
    params: ModelParams,
    dim: usize,
    site_dim: usize,
    /// J_x off-diagonal band, jx_band[k] = <k+1|J_x|k>.
    jx_band: Vec<f64>,
    /// J_z diagonal, the m values.
    jz_diag: Vec<f64>,
    /// mu / j, the coefficient of J_z1 J_z2.
    coupling: f64,
    dense: OnceLock<OperatorMatrix>,
}

/// Build the Hamiltonian handle for the given parameters.
pub fn build_hamiltonian(params: ModelParams) -> Result<HamiltonianHandle> {
    let site_dim = params.j.dim();
    let dim = site_dim * site_dim;
    Ok(HamiltonianHandle {
        params,
        dim,
        site_dim,
        jx_band: spin::jx_band(params.j),
        jz_diag: (0..site_dim).map(|k| params.j.m_value(k)).collect(),
        coupling: params.mu / params.j.j(),
        dense: OnceLock::new(),
    })
}

impl HamiltonianHandle {
    pub fn params(&self) -> ModelParams {
        self.params
    }

    /// Total dimension (2j+1)^2.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn site_dim(&self) -> usize {
        self.site_dim
    }

    /// H * v without bounds checking beyond a debug assert; the public entry
    /// point is `apply_hamiltonian`. out is overwritten.
    pub(crate) fn apply_into(&self, v: &[f64], out: &mut [f64]) {
        debug_assert_eq!(v.len(), self.dim);
        debug_assert_eq!(out.len(), self.dim);
        let d = self.site_dim;
        let band = &self.jx_band;
        let mz = &self.jz_diag;
        let g = self.coupling;

        // Coupling term: diagonal (mu/j) m*n.
        for m in 0..d {
            let gm = g * mz[m];
            let row_v = &v[m * d..(m + 1) * d];
            let row_o = &mut out[m * d..(m + 1) * d];
            for n in 0..d {
                row_o[n] = gm * mz[n] * row_v[n];
            }
        }

        // J_x on top 2: tridiagonal within each m block.
        for m in 0..d {
            let row_v = &v[m * d..(m + 1) * d];
            let row_o = &mut out[m * d..(m + 1) * d];
            for n in 0..d - 1 {
                let c = band[n];
                row_o[n] += c * row_v[n + 1];
                row_o[n + 1] += c * row_v[n];
            }
        }

        // J_x on top 1: couples whole m blocks.
        for m in 0..d - 1 {
            let c = band[m];
            let (lo, hi) = out.split_at_mut((m + 1) * d);
            let row_lo = &mut lo[m * d..(m + 1) * d];
            let row_hi = &mut hi[..d];
            let v_lo = &v[m * d..(m + 1) * d];
            let v_hi = &v[(m + 1) * d..(m + 2) * d];
            for n in 0..d {
                row_lo[n] += c * v_hi[n];
                row_hi[n] += c * v_lo[n];
            }
        }
    }

    /// Dense matrix form; errors above `MAX_DENSE_DIM`. Computed once and
    /// cached on the handle.
    pub fn dense_matrix(&self) -> Result<&OperatorMatrix> {
        if self.dim > MAX_DENSE_DIM {
            return Err(Error::DenseCapExceeded {
                dim: self.dim,
                max: MAX_DENSE_DIM,
            });
        }
        if self.dense.get().is_none() {
            let j = self.params.j;
            let jx1 = kron(&spin::jx(j), &OperatorMatrix::identity(self.site_dim))?;
            let jx2 = kron(&OperatorMatrix::identity(self.site_dim), &spin::jx(j))?;
            let zz = kron(&spin::jz(j), &spin::jz(j))?.scale_real(self.coupling);
            let h = jx1.add(&jx2)?.add(&zz)?;
            let _ = self.dense.set(h);
        }
        Ok(self.dense.get().expect("dense Hamiltonian just built"))
    }

    /// <state|H|state>, real because H is real symmetric.
    pub fn expectation(&self, state: &QuantumState) -> Result<f64> {
        if state.dim() != self.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                got: state.dim(),
            });
        }
        let re: Vec<f64> = state.amplitudes().iter().map(|z| z.re).collect();
        let im: Vec<f64> = state.amplitudes().iter().map(|z| z.im).collect();
        let mut hre = vec![0.0; self.dim];
        let mut him = vec![0.0; self.dim];
        self.apply_into(&re, &mut hre);
        self.apply_into(&im, &mut him);
        Ok(crate::util::dot(&re, &hre) + crate::util::dot(&im, &him))
    }
}

/// H * v for a real vector in the product basis.
pub fn apply_hamiltonian(h: &HamiltonianHandle, v: &[f64]) -> Result<Vec<f64>> {
    if v.len() != h.dim() {
        return Err(Error::LengthMismatch {
            expected: h.dim(),
            got: v.len(),
        });
    }
    let mut out = vec![0.0; h.dim()];
    h.apply_into(v, &mut out);
    Ok(out)
}

/// Max norms of the commutators of H with the model's symmetry operators.
///
/// [H, J_i^2] vanishes because each top stays in its irrep (J_i^2 is j(j+1)
/// times the identity there). [H, SWAP] and [H, Pi] vanish because the tops
/// are identical and the spectrum is even under J_z -> -J_z on both tops.
/// [H, J_total^2] does NOT vanish for mu != 0: the coupling is not
/// rotationally invariant, which is what makes the model nontrivial.
#[derive(Debug, Clone, Copy)]
pub struct SymmetryReport {
    pub comm_j1_squared: f64,
    pub comm_j2_squared: f64,
    pub comm_swap: f64,
    pub comm_total_j_squared: f64,
    /// Commutator with Pi = exp(i pi J_x1) exp(i pi J_x2), the Z2 parity
    /// that flips the sign of both J_z's.
    pub comm_z2_parity: f64,
}

/// Permutation operator exchanging the two tops: SWAP|m,n> = |n,m>.
pub fn swap_operator(site_dim: usize) -> OperatorMatrix {
    let dim = site_dim * site_dim;
    let mut s = OperatorMatrix::zeros(dim);
    for m in 0..site_dim {
        for n in 0..site_dim {
            s.set(n * site_dim + m, m * site_dim + n, Complex64::new(1.0, 0.0));
        }
    }
    s
}

/// exp(i pi J_x) for a single top, built from the eigendecomposition of J_x.
fn single_top_x_parity(j: SpinJ) -> Result<OperatorMatrix> {
    let (vals, vecs) = crate::eigen::symmetric_eigen_real(&spin::jx(j).to_real_symmetric()?, true)?;
    let vecs = vecs.expect("eigenvectors requested");
    let d = j.dim();
    // Q diag(e^{i pi lambda}) Q^T
    let mut out = OperatorMatrix::zeros(d);
    for r in 0..d {
        for c in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..d {
                let phase = Complex64::from_polar(1.0, std::f64::consts::PI * vals[k]);
                acc += Complex64::new(vecs.get(r, k) * vecs.get(c, k), 0.0) * phase;
            }
            out.set(r, c, acc);
        }
    }
    Ok(out)
}

/// Compute the symmetry commutator report on the dense form (test sizes).
pub fn check_symmetries(h: &HamiltonianHandle) -> Result<SymmetryReport> {
    let j = h.params().j;
    let d = h.site_dim();
    let dense = h.dense_matrix()?;
    let eye = OperatorMatrix::identity(d);

    let jsq_site = spin::jx(j)
        .mul(&spin::jx(j))?
        .add(&spin::jy(j).mul(&spin::jy(j))?)?
        .add(&spin::jz(j).mul(&spin::jz(j))?)?;
    let j1sq = kron(&jsq_site, &eye)?;
    let j2sq = kron(&eye, &jsq_site)?;

    // J_total^2 = J1^2 + J2^2 + 2 (Jx1 Jx2 + Jy1 Jy2 + Jz1 Jz2)
    let cross = kron(&spin::jx(j), &spin::jx(j))?
        .add(&kron(&spin::jy(j), &spin::jy(j))?)?
        .add(&kron(&spin::jz(j), &spin::jz(j))?)?;
    let jtot_sq = j1sq.add(&j2sq)?.add(&cross.scale_real(2.0))?;

    let swap = swap_operator(d);
    let px = single_top_x_parity(j)?;
    let parity = kron(&px, &px)?;

    Ok(SymmetryReport {
        comm_j1_squared: OperatorMatrix::commutator_max_abs(dense, &j1sq)?,
        comm_j2_squared: OperatorMatrix::commutator_max_abs(dense, &j2sq)?,
        comm_swap: OperatorMatrix::commutator_max_abs(dense, &swap)?,
        comm_total_j_squared: OperatorMatrix::commutator_max_abs(dense, &jtot_sq)?,
        comm_z2_parity: OperatorMatrix::commutator_max_abs(dense, &parity)?,
    })
}
