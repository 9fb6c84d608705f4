//! Spin coherent states, the two-body Husimi Q-function, and Wehrl
//! delocalization entropies.
//!
//! Coherent amplitudes are evaluated directly in (theta, phi) through the
//! binomial closed form, never through the stereographic z = tan(theta/2),
//! so theta = pi needs no special casing. Binomials go through cumulative
//! log-factorials; the power factors stay in plain powi form (both bases
//! are in [0, 1], and 0^0 = 1 covers the poles exactly).

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::spin::SpinJ;
use crate::state::QuantumState;

use std::f64::consts::PI;

/// Minimum per-axis resolution for cross-section grids.
const MIN_CROSS_SECTION: usize = 16;

/// Minimum per-axis resolution for Wehrl quadrature.
const MIN_QUADRATURE: usize = 32;

/// Allowed deviation of the quadrature of Q from 1 before the grid is
/// declared too coarse for the state.
const NORMALIZATION_SLACK: f64 = 1e-2;

/// A point on the sphere; theta is the polar angle from the positive z
/// axis, phi the azimuth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereAngle {
    theta: f64,
    phi: f64,
}

impl SphereAngle {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidInput(format!(
                "theta {theta} outside [0, pi]"
            )));
        }
        if !phi.is_finite() || !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::InvalidInput(format!(
                "phi {phi} outside [0, 2*pi)"
            )));
        }
        Ok(SphereAngle { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// The antipodal point; coherent states at antipodes are orthogonal.
    pub fn antipode(&self) -> SphereAngle {
        SphereAngle {
            theta: PI - self.theta,
            phi: if self.phi >= PI {
                self.phi - PI
            } else {
                self.phi + PI
            },
        }
    }
}

/// J_z-basis amplitudes of the coherent state at one sphere point, in
/// ascending-m order.
#[derive(Debug, Clone)]
pub struct CoherentAmplitudes {
    pub j: SpinJ,
    pub amps: Vec<Complex64>,
}

fn ln_factorials(up_to: usize) -> Vec<f64> {
    let mut lf = vec![0.0; up_to + 1];
    for k in 1..=up_to {
        lf[k] = lf[k - 1] + (k as f64).ln();
    }
    lf
}

/// amps[k] = sqrt(C(2j, k)) cos^{2j-k}(theta/2) sin^k(theta/2) e^{-i k phi}
/// for k = j + m = 0..2j. theta = 0 gives the lowest-weight state |j,-j>;
/// theta = pi the highest-weight one.
pub fn coherent_amps(j: SpinJ, angle: SphereAngle) -> CoherentAmplitudes {
    let two_j = j.twice() as usize;
    let lf = ln_factorials(two_j);
    let c = (angle.theta / 2.0).cos();
    let s = (angle.theta / 2.0).sin();
    let amps = (0..=two_j)
        .map(|k| {
            let ln_binom = lf[two_j] - lf[k] - lf[two_j - k];
            let r = (0.5 * ln_binom).exp()
                * c.powi((two_j - k) as i32)
                * s.powi(k as i32);
            Complex64::from_polar(r, -(k as f64) * angle.phi)
        })
        .collect();
    CoherentAmplitudes { j, amps }
}

/// Q(z1, z2) = |<z1| (x) <z2| psi>|^2, evaluated by contracting the first
/// top's index and then the second's.
pub fn q_value(state: &QuantumState, a1: SphereAngle, a2: SphereAngle) -> f64 {
    let amps1 = coherent_amps(state.j(), a1).amps;
    let amps2 = coherent_amps(state.j(), a2).amps;
    overlap_from_tables(state, &amps1, &amps2).norm_sqr()
}

fn overlap_from_tables(
    state: &QuantumState,
    amps1: &[Complex64],
    amps2: &[Complex64],
) -> Complex64 {
    let d = state.j().dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..d {
        let mut row = Complex64::new(0.0, 0.0);
        for n in 0..d {
            row += amps2[n].conj() * state.amp(m, n);
        }
        acc += amps1[m].conj() * row;
    }
    acc
}

/// Q sampled on a uniform [0, pi]^2 theta grid at fixed azimuths. The grid
/// is built symmetric (theta[n-1-i] is exactly pi - theta[i]) so symmetry
/// checks under theta -> pi - theta compare equal floating-point inputs.
#[derive(Debug, Clone)]
pub struct QGrid {
    pub axis1: Vec<f64>,
    pub axis2: Vec<f64>,
    pub phi1: f64,
    pub phi2: f64,
    /// values[i][k] = Q(axis1[i], axis2[k]).
    pub values: Vec<Vec<f64>>,
}

fn symmetric_theta_grid(n: usize) -> Vec<f64> {
    let mut grid = vec![0.0; n];
    let h = PI / (n - 1) as f64;
    for i in 0..n.div_ceil(2) {
        let t = i as f64 * h;
        grid[i] = t;
        grid[n - 1 - i] = PI - t;
    }
    grid
}

pub fn q_cross_section(
    state: &QuantumState,
    phi1: f64,
    phi2: f64,
    n_theta: usize,
) -> Result<QGrid> {
    if n_theta < MIN_CROSS_SECTION {
        return Err(Error::InvalidInput(format!(
            "cross-section resolution {n_theta} below {MIN_CROSS_SECTION}"
        )));
    }
    let axis = symmetric_theta_grid(n_theta);
    let j = state.j();
    let d = j.dim();
    let tables1: Vec<Vec<Complex64>> = axis
        .iter()
        .map(|&t| Ok(coherent_amps(j, SphereAngle::new(t, phi1)?).amps))
        .collect::<Result<_>>()?;
    let tables2: Vec<Vec<Complex64>> = axis
        .iter()
        .map(|&t| Ok(coherent_amps(j, SphereAngle::new(t, phi2)?).amps))
        .collect::<Result<_>>()?;

    let values: Vec<Vec<f64>> = tables1
        .par_iter()
        .map(|a1| {
            // Contract the first index once per row, then sweep the columns.
            let mut b = vec![Complex64::new(0.0, 0.0); d];
            for (m, w) in a1.iter().enumerate() {
                let wc = w.conj();
                for (n, slot) in b.iter_mut().enumerate() {
                    *slot += wc * state.amp(m, n);
                }
            }
            tables2
                .iter()
                .map(|a2| {
                    a2.iter()
                        .zip(b.iter())
                        .map(|(a, bv)| a.conj() * bv)
                        .sum::<Complex64>()
                        .norm_sqr()
                })
                .collect()
        })
        .collect();

    Ok(QGrid {
        axis1: axis.clone(),
        axis2: axis,
        phi1,
        phi2,
        values,
    })
}

/// Trapezoid weights in theta paired with the symmetric grid.
fn theta_weights(n: usize) -> Vec<f64> {
    let h = PI / (n - 1) as f64;
    let mut w = vec![h; n];
    w[0] = h / 2.0;
    w[n - 1] = h / 2.0;
    w
}

/// Quadrature of Q and of g(Q) over both spheres with the coherent-state
/// measure ((2j+1)/4pi)^2 sin(t1) sin(t2). Returns (integral of Q,
/// integral of g(Q)).
fn q_functional_quadrature(
    state: &QuantumState,
    n_theta: usize,
    n_phi: usize,
    g: impl Fn(f64) -> f64 + Sync,
) -> Result<(f64, f64)> {
    if n_theta < MIN_QUADRATURE || n_phi < MIN_QUADRATURE {
        return Err(Error::InvalidInput(format!(
            "quadrature grid {n_theta}x{n_phi} below {MIN_QUADRATURE} per axis"
        )));
    }
    let j = state.j();
    let d = j.dim();
    let thetas = symmetric_theta_grid(n_theta);
    let tw = theta_weights(n_theta);
    let phi_w = 2.0 * PI / n_phi as f64;

    // One table serves both spheres: same grid, same j.
    let mut amps: Vec<Vec<Complex64>> = Vec::with_capacity(n_theta * n_phi);
    let mut weights: Vec<f64> = Vec::with_capacity(n_theta * n_phi);
    for (ti, &theta) in thetas.iter().enumerate() {
        for pi_idx in 0..n_phi {
            let phi = phi_idx_to_angle(pi_idx, n_phi);
            amps.push(coherent_amps(j, SphereAngle::new(theta, phi)?).amps);
            weights.push(tw[ti] * phi_w * theta.sin());
        }
    }

    // First-top contraction per sphere-1 point.
    let contracted: Vec<Vec<Complex64>> = amps
        .par_iter()
        .map(|a1| {
            let mut b = vec![Complex64::new(0.0, 0.0); d];
            for (m, w) in a1.iter().enumerate() {
                let wc = w.conj();
                for (n, slot) in b.iter_mut().enumerate() {
                    *slot += wc * state.amp(m, n);
                }
            }
            b
        })
        .collect();

    // Per-point partial sums are collected in index order and reduced
    // sequentially, so totals do not depend on the thread count.
    let partials: Vec<(f64, f64)> = contracted
        .par_iter()
        .zip(weights.par_iter())
        .map(|(b, &w1)| {
            let mut q_sum = 0.0;
            let mut g_sum = 0.0;
            for (a2, &w2) in amps.iter().zip(weights.iter()) {
                let mut acc = Complex64::new(0.0, 0.0);
                for (a, bv) in a2.iter().zip(b.iter()) {
                    acc += a.conj() * bv;
                }
                let q = acc.norm_sqr();
                q_sum += w2 * q;
                g_sum += w2 * g(q);
            }
            (w1 * q_sum, w1 * g_sum)
        })
        .collect();

    let measure = ((j.dim() as f64) / (4.0 * PI)).powi(2);
    let mut q_total = 0.0;
    let mut g_total = 0.0;
    for (q, gv) in partials {
        q_total += q;
        g_total += gv;
    }
    Ok((measure * q_total, measure * g_total))
}

fn phi_idx_to_angle(idx: usize, n_phi: usize) -> f64 {
    2.0 * PI * idx as f64 / n_phi as f64
}

/// Wehrl entropy -int Q ln Q dmu in nats. Errors with
/// `QuadratureTooCoarse` when the same grid fails to integrate Q itself to
/// within `NORMALIZATION_SLACK` of 1.
pub fn wehrl_entropy(state: &QuantumState, n_theta: usize, n_phi: usize) -> Result<f64> {
    let (q_norm, s) = q_functional_quadrature(state, n_theta, n_phi, |q| {
        if q > 0.0 {
            -q * q.ln()
        } else {
            0.0
        }
    })?;
    if (q_norm - 1.0).abs() > NORMALIZATION_SLACK {
        return Err(Error::QuadratureTooCoarse {
            q_norm,
            limit: NORMALIZATION_SLACK,
        });
    }
    Ok(s)
}

/// Renyi-Wehrl entropy of the given order, in nats; order 1 is the Wehrl
/// limit.
pub fn renyi_wehrl(
    state: &QuantumState,
    order: f64,
    n_theta: usize,
    n_phi: usize,
) -> Result<f64> {
    if !(order > 0.0 && order.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "Renyi order {order} must be positive and finite"
        )));
    }
    if order == 1.0 {
        return wehrl_entropy(state, n_theta, n_phi);
    }
    let (q_norm, moment) =
        q_functional_quadrature(state, n_theta, n_phi, |q| q.powf(order))?;
    if (q_norm - 1.0).abs() > NORMALIZATION_SLACK {
        return Err(Error::QuadratureTooCoarse {
            q_norm,
            limit: NORMALIZATION_SLACK,
        });
    }
    Ok(moment.ln() / (1.0 - order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen;
    use crate::model::{build_hamiltonian, ModelParams};

    fn product_coherent(j: SpinJ, a1: SphereAngle, a2: SphereAngle) -> QuantumState {
        let c1 = coherent_amps(j, a1).amps;
        let c2 = coherent_amps(j, a2).amps;
        let d = j.dim();
        let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
        for m in 0..d {
            for n in 0..d {
                amps[m * d + n] = c1[m] * c2[n];
            }
        }
        QuantumState::new(j, amps).unwrap()
    }

    fn antialigned_cat(j: SpinJ) -> QuantumState {
        let d = j.dim();
        let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
        let w = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amps[(d - 1) * d] = w;
        amps[d - 1] = w;
        QuantumState::new(j, amps).unwrap()
    }

    #[test]
    fn poles_give_extreme_weight_states() {
        let j = SpinJ::from_twice(7).unwrap();
        let south = coherent_amps(j, SphereAngle::new(0.0, 0.3).unwrap());
        assert!((south.amps[0].norm() - 1.0).abs() < 1e-15);
        assert!(south.amps[1..].iter().all(|a| a.norm() == 0.0));

        // cos(pi/2) rounds to ~6e-17 rather than 0, so the suppressed
        // amplitudes at the north pole are tiny but not exact zeros.
        let north = coherent_amps(j, SphereAngle::new(PI, 0.3).unwrap());
        assert!((north.amps[7].norm() - 1.0).abs() < 1e-15);
        assert!(north.amps[..7].iter().all(|a| a.norm() < 1e-15));
    }

    #[test]
    fn half_spin_equator_is_equal_superposition() {
        let j = SpinJ::from_twice(1).unwrap();
        let amps = coherent_amps(j, SphereAngle::new(PI / 2.0, 0.0).unwrap()).amps;
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((amps[0].re - r).abs() < 1e-12 && amps[0].im.abs() < 1e-15);
        assert!((amps[1].re - r).abs() < 1e-12 && amps[1].im.abs() < 1e-15);
    }

    #[test]
    fn coherent_amps_stay_normalized_up_to_j_fifty() {
        for twice_j in [1u32, 5, 14, 28, 100] {
            let j = SpinJ::from_twice(twice_j).unwrap();
            for (t, p) in [(0.0, 0.0), (0.31, 5.9), (PI / 2.0, PI), (2.9, 0.4), (PI, 1.0)] {
                let amps = coherent_amps(j, SphereAngle::new(t, p).unwrap()).amps;
                let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
                assert!(
                    (norm - 1.0).abs() < 1e-12,
                    "norm {norm} at twice_j={twice_j}, theta={t}"
                );
            }
        }
    }

    #[test]
    fn angles_are_validated() {
        assert!(SphereAngle::new(-0.1, 0.0).is_err());
        assert!(SphereAngle::new(PI + 0.1, 0.0).is_err());
        assert!(SphereAngle::new(1.0, -0.1).is_err());
        assert!(SphereAngle::new(1.0, 2.0 * PI).is_err());
    }

    #[test]
    fn q_is_one_at_the_state_and_zero_at_the_antipode() {
        let j = SpinJ::from_twice(5).unwrap();
        let a1 = SphereAngle::new(1.1, 0.7).unwrap();
        let a2 = SphereAngle::new(2.0, 4.1).unwrap();
        let state = product_coherent(j, a1, a2);
        assert!((q_value(&state, a1, a2) - 1.0).abs() < 1e-10);
        assert!(q_value(&state, a1.antipode(), a2) < 1e-20);
    }

    #[test]
    fn decoupled_ground_state_peaks_at_the_negative_x_point() {
        // mu = 0 ground state points both tops along -x, which in these
        // angles is (theta, phi) = (pi/2, pi).
        let j = SpinJ::from_twice(10).unwrap();
        let h = build_hamiltonian(ModelParams::new(j, 0.0).unwrap()).unwrap();
        let ground = eigen::ground_state(&h, 1e-11).unwrap();
        let state = QuantumState::from_real(j, &ground.eigenvectors[0]).unwrap();
        let grid = q_cross_section(&state, PI, PI, 33).unwrap();
        let mut best = (0, 0);
        for i in 0..33 {
            for k in 0..33 {
                if grid.values[i][k] > grid.values[best.0][best.1] {
                    best = (i, k);
                }
            }
        }
        assert_eq!(best, (16, 16), "peak off the equator point");
        assert!((grid.axis1[16] - PI / 2.0).abs() < 1e-12);
        // Every Q value is a squared overlap of normalized states.
        for row in &grid.values {
            for &q in row {
                assert!((-1e-12..=1.0 + 1e-12).contains(&q));
            }
        }
    }

    #[test]
    fn strong_coupling_cross_section_is_swap_and_flip_symmetric() {
        let j = SpinJ::from_twice(10).unwrap();
        let h = build_hamiltonian(ModelParams::new(j, 2.0).unwrap()).unwrap();
        let ground = eigen::ground_state(&h, 1e-11).unwrap();
        let state = QuantumState::from_real(j, &ground.eigenvectors[0]).unwrap();
        let n = 41;
        let grid = q_cross_section(&state, PI, PI, n).unwrap();
        for i in 0..n {
            assert_eq!(grid.axis1[i].to_bits(), (PI - grid.axis1[n - 1 - i]).to_bits());
            for k in 0..n {
                let q = grid.values[i][k];
                assert!(
                    (q - grid.values[k][i]).abs() < 1e-10,
                    "swap asymmetry at ({i},{k})"
                );
                assert!(
                    (q - grid.values[n - 1 - i][n - 1 - k]).abs() < 1e-10,
                    "flip asymmetry at ({i},{k})"
                );
            }
        }
    }

    #[test]
    fn wehrl_entropy_of_product_coherent_pair_is_one_nat() {
        // Each half-spin sphere contributes 2j/(2j+1) = 1/2 nat, the known
        // coherent-state minimum.
        let j = SpinJ::from_twice(1).unwrap();
        let a = SphereAngle::new(0.7, 1.1).unwrap();
        let b = SphereAngle::new(2.2, 3.9).unwrap();
        let state = product_coherent(j, a, b);
        let coarse = wehrl_entropy(&state, 32, 32).unwrap();
        let fine = wehrl_entropy(&state, 48, 48).unwrap();
        assert!((fine - 1.0).abs() < 1e-3, "Wehrl {fine}");
        assert!((fine - coarse).abs() < 1e-3, "not grid-stable: {coarse} vs {fine}");
    }

    #[test]
    fn wehrl_entropy_of_large_j_cat_adds_ln_two() {
        // Two near-orthogonal lobes: coherent minimum per sphere plus ln 2.
        let j = SpinJ::from_twice(28).unwrap();
        let state = antialigned_cat(j);
        let expected = 2.0 * (28.0 / 29.0) + std::f64::consts::LN_2;
        let s = wehrl_entropy(&state, 96, 64).unwrap();
        assert!((s - expected).abs() < 5e-3, "Wehrl {s}, expected {expected}");
    }

    #[test]
    fn renyi_order_two_of_coherent_pair_has_closed_form() {
        // int Q^2 per sphere is (2j+1)/(4j+1); for j = 1/2 the pair gives
        // S_2 = -ln(4/9).
        let j = SpinJ::from_twice(1).unwrap();
        let state = product_coherent(
            j,
            SphereAngle::new(1.3, 0.2).unwrap(),
            SphereAngle::new(0.4, 2.8).unwrap(),
        );
        let s2 = renyi_wehrl(&state, 2.0, 48, 48).unwrap();
        let expected = (9.0f64 / 4.0).ln();
        assert!((s2 - expected).abs() < 1e-3, "{s2} vs {expected}");
        let s1 = renyi_wehrl(&state, 1.0, 32, 32).unwrap();
        let w = wehrl_entropy(&state, 32, 32).unwrap();
        assert_eq!(s1.to_bits(), w.to_bits());
    }

    #[test]
    fn quadrature_resolutions_are_validated() {
        let j = SpinJ::from_twice(1).unwrap();
        let state = product_coherent(
            j,
            SphereAngle::new(0.7, 1.1).unwrap(),
            SphereAngle::new(0.7, 1.1).unwrap(),
        );
        assert!(matches!(
            wehrl_entropy(&state, 16, 64),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            q_cross_section(&state, 0.0, 0.0, 8),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            renyi_wehrl(&state, 0.0, 32, 32),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn coarse_grid_on_sharp_state_reports_normalization_failure() {
        // At j = 50 the coherent lobes are narrower than the 32-point
        // theta spacing resolves.
        let j = SpinJ::from_twice(100).unwrap();
        let state = antialigned_cat(j);
        match wehrl_entropy(&state, 32, 32) {
            Err(Error::QuadratureTooCoarse { q_norm, .. }) => {
                assert!((q_norm - 1.0).abs() > NORMALIZATION_SLACK);
            }
            Ok(s) => panic!("expected coarse-grid failure, got S = {s}"),
            Err(other) => panic!("unexpected error {other:?}"),
        }
    }
}
