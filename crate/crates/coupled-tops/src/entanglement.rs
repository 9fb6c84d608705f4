//! Entanglement between the two tops: reduced density matrices, von
//! Neumann entropy in bits, entropy-vs-coupling sweeps, and the coupling
//! of maximal ground-state entanglement.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::eigen::{self, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;
use crate::model::{build_hamiltonian, ModelParams};
use crate::spin::SpinJ;
use crate::state::QuantumState;

/// Eigenvalues of a reduced density matrix below this are treated as exact
/// zeros and dropped before taking logs.
const EIGENVALUE_FLOOR: f64 = 1e-14;

/// Most negative eigenvalue tolerated from roundoff before the matrix is
/// rejected as non-positive.
const NEGATIVE_EIGENVALUE_TOL: f64 = -1e-12;

/// Trace deviation from 1 beyond which a density matrix is rejected.
const TRACE_TOL: f64 = 1e-8;

/// State of one top after tracing out the other.
#[derive(Debug, Clone)]
pub struct ReducedDensityMatrix {
    entries: OperatorMatrix,
    subsystem: u8,
}

impl ReducedDensityMatrix {
    pub fn entries(&self) -> &OperatorMatrix {
        &self.entries
    }

    /// 1 for the first (slow-index) top, 2 for the second.
    pub fn subsystem(&self) -> u8 {
        self.subsystem
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    /// tr(rho^2); 1 for pure states, 1/(2j+1) when maximally mixed.
    pub fn purity(&self) -> Result<f64> {
        Ok(self.entries.mul(&self.entries)?.trace().re)
    }
}

/// Trace out one top. With the amplitudes reshaped into the matrix
/// C[m][n] = <m,n|psi> (first top's index slow), the two reductions are
/// rho_1 = C C^dagger and rho_2 = C^T conj(C).
pub fn reduce(state: &QuantumState, subsystem: u8) -> Result<ReducedDensityMatrix> {
    if subsystem != 1 && subsystem != 2 {
        return Err(Error::InvalidInput(format!(
            "subsystem must be 1 or 2, got {subsystem}"
        )));
    }
    let d = state.j().dim();
    let mut rho = OperatorMatrix::zeros(d);
    for r in 0..d {
        for c in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..d {
                acc += match subsystem {
                    1 => state.amp(r, k) * state.amp(c, k).conj(),
                    _ => state.amp(k, r) * state.amp(k, c).conj(),
                };
            }
            rho.set(r, c, acc);
        }
    }
    let trace = rho.trace().re;
    if (trace - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidDensityMatrix(format!(
            "trace {trace} after partial trace"
        )));
    }
    Ok(ReducedDensityMatrix {
        entries: rho,
        subsystem,
    })
}

/// Von Neumann entropy -tr(rho log2 rho), in bits. Eigenvalues below
/// `EIGENVALUE_FLOOR` are dropped (0 log 0 := 0); anything more negative
/// than roundoff rejects the matrix.
pub fn entropy_bits(rho: &ReducedDensityMatrix) -> Result<f64> {
    let trace = rho.trace();
    if (trace - 1.0).abs() > TRACE_TOL {
        return Err(Error::InvalidDensityMatrix(format!(
            "trace {trace} deviates from 1 beyond {TRACE_TOL}"
        )));
    }
    let eigenvalues = eigen::hermitian_eigenvalues(&rho.entries)?;
    let mut s = 0.0;
    for lambda in eigenvalues {
        if lambda < NEGATIVE_EIGENVALUE_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {lambda}"
            )));
        }
        if lambda > EIGENVALUE_FLOOR {
            s -= lambda * lambda.log2();
        }
    }
    Ok(s)
}

/// One converged point of an entropy-vs-coupling sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub mu: f64,
    pub entropy_bits: f64,
    pub ground_energy: f64,
    pub gap: f64,
    /// Ground level quasi-degenerate (gap below the solver threshold); the
    /// entropy then refers to the exchange-symmetric member of the pair.
    pub degenerate_flag: bool,
}

/// A coupling value whose solve failed, with the reason.
#[derive(Debug)]
pub struct SweepFailure {
    pub mu: f64,
    pub error: Error,
}

/// Result of a sweep: converged rows in grid order, plus any failed points.
#[derive(Debug)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub failures: Vec<SweepFailure>,
}

/// Ground-state entropy at a single coupling.
pub fn entropy_at(j: SpinJ, mu: f64, tol: f64) -> Result<SweepRow> {
    let h = build_hamiltonian(ModelParams::new(j, mu)?)?;
    let solved = eigen::ground_state(&h, tol)?;
    let state = QuantumState::from_real(j, &solved.eigenvectors[0])?;
    let s = entropy_bits(&reduce(&state, 1)?)?;
    Ok(SweepRow {
        mu,
        entropy_bits: s,
        ground_energy: solved.eigenvalues[0],
        gap: solved.gap.unwrap_or(f64::NAN),
        degenerate_flag: solved.quasi_degenerate,
    })
}

/// Entropy of entanglement across a coupling grid. Rows are computed
/// independently (in parallel when a thread pool is configured); a failed
/// point is recorded and skipped rather than aborting the sweep.
pub fn sweep_with_tol(j: SpinJ, mu_grid: &[f64], tol: f64) -> Result<SweepReport> {
    if mu_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidInput("mu grid must be sorted ascending".into()));
    }
    let outcomes: Vec<(f64, Result<SweepRow>)> = mu_grid
        .par_iter()
        .map(|&mu| (mu, entropy_at(j, mu, tol)))
        .collect();
    let mut rows = Vec::with_capacity(mu_grid.len());
    let mut failures = Vec::new();
    for (mu, outcome) in outcomes {
        match outcome {
            Ok(row) => rows.push(row),
            Err(error) => failures.push(SweepFailure { mu, error }),
        }
    }
    Ok(SweepReport { rows, failures })
}

/// `sweep_with_tol` at the solver's default tolerance.
pub fn sweep(j: SpinJ, mu_grid: &[f64]) -> Result<SweepReport> {
    sweep_with_tol(j, mu_grid, DEFAULT_TOL)
}

/// Located maximum of S(mu).
#[derive(Debug, Clone)]
pub struct CriticalPointRecord {
    pub j: SpinJ,
    pub mu_qc: f64,
    pub s_max: f64,
    /// Final bracket around the maximum, width below the refine tolerance.
    pub bracket: (f64, f64),
    pub grid_step: f64,
}

/// Outcome of the peak search: either a bracketed interior maximum or the
/// finding that entropy is monotone over the scan window (the half-spin
/// case, where entanglement saturates instead of peaking).
#[derive(Debug, Clone)]
pub enum CriticalPointOutcome {
    Peak(CriticalPointRecord),
    NoPeak { j: SpinJ, window: (f64, f64) },
}

/// Search configuration for `find_mu_qc_with`. The defaults match the
/// regime where every known peak lies.
#[derive(Debug, Clone)]
pub struct MuQcConfig {
    pub window: (f64, f64),
    pub coarse_step: f64,
    pub refine_tol: f64,
    pub solver_tol: f64,
}

impl Default for MuQcConfig {
    fn default() -> Self {
        MuQcConfig {
            window: (0.5, 3.0),
            coarse_step: 0.01,
            refine_tol: 1e-3,
            solver_tol: DEFAULT_TOL,
        }
    }
}

/// Coupling of maximal ground-state entanglement: coarse scan of the
/// window, then golden-section refinement inside the bracketing triple.
pub fn find_mu_qc(j: SpinJ, coarse_step: f64, refine_tol: f64) -> Result<CriticalPointOutcome> {
    find_mu_qc_with(
        j,
        MuQcConfig {
            coarse_step,
            refine_tol,
            ..MuQcConfig::default()
        },
    )
}

pub fn find_mu_qc_with(j: SpinJ, cfg: MuQcConfig) -> Result<CriticalPointOutcome> {
    let (lo, hi) = cfg.window;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidInput(format!("bad scan window ({lo}, {hi})")));
    }
    if !(cfg.coarse_step > 0.0 && cfg.coarse_step <= 0.05) {
        return Err(Error::InvalidInput(format!(
            "coarse step {} outside (0, 0.05]; shallow peaks need a fine scan",
            cfg.coarse_step
        )));
    }
    if !(cfg.refine_tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "refine tolerance {} must be positive",
            cfg.refine_tol
        )));
    }

    let steps = ((hi - lo) / cfg.coarse_step).round() as usize;
    let grid: Vec<f64> = (0..=steps)
        .map(|i| (lo + i as f64 * cfg.coarse_step).min(hi))
        .collect();
    let report = sweep_with_tol(j, &grid, cfg.solver_tol)?;
    if !report.failures.is_empty() {
        let f = &report.failures[0];
        return Err(Error::InvalidInput(format!(
            "scan solve failed at mu = {}: {}",
            f.mu, f.error
        )));
    }
    let rows = report.rows;
    let mut best = 0;
    for (i, row) in rows.iter().enumerate() {
        if row.entropy_bits > rows[best].entropy_bits {
            best = i;
        }
    }
    if best == 0 || best == rows.len() - 1 {
        return Ok(CriticalPointOutcome::NoPeak { j, window: (lo, hi) });
    }

    // Golden-section on the bracketing triple (unimodal inside it).
    let s_of = |mu: f64| -> Result<f64> { Ok(entropy_at(j, mu, cfg.solver_tol)?.entropy_bits) };
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (rows[best - 1].mu, rows[best + 1].mu);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = s_of(x1)?;
    let mut f2 = s_of(x2)?;
    while b - a > cfg.refine_tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = s_of(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = s_of(x1)?;
        }
    }
    let (mu_qc, s_max) = if f1 > f2 { (x1, f1) } else { (x2, f2) };
    Ok(CriticalPointOutcome::Peak(CriticalPointRecord {
        j,
        mu_qc,
        s_max,
        bracket: (a, b),
        grid_step: cfg.coarse_step,
    }))
}
