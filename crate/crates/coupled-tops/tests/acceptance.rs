//! Release gates, one test per row of the acceptance table in the README.
//!
//! Each gate asserts at its stated tolerance and prints a one-line verdict
//! with the measured numbers (run with `--nocapture` to see them next to
//! the harness output). Gate 8 is advisory: it reports SOFT PASS or SOFT
//! MISS and never fails the build.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

use num_complex::Complex64;

use coupled_tops::classical::{self, Branch, ClassicalState, Stability};
use coupled_tops::eigen::{self, DEFAULT_TOL};
use coupled_tops::entanglement::{self, CriticalPointOutcome};
use coupled_tops::matrix::OperatorMatrix;
use coupled_tops::phase_space::{self, QGrid};
use coupled_tops::spin;
use coupled_tops::{build_hamiltonian, ModelParams, QuantumState, SpinJ};

const COORD_TOL: f64 = 1e-12;
const FLIP_BRACKET: f64 = 1e-6;
const PEAK_TARGET: f64 = 1.184;
const PEAK_WINDOW: f64 = 0.01;
const BASELINE_WINDOW: f64 = 5e-3;
const SEARCH_STEP: f64 = 0.01;
const SEARCH_REFINE: f64 = 1e-3;
const ORACLE_REL_TOL: f64 = 1e-10;
const ENTROPY_ROUTE_TOL: f64 = 1e-10;
const ALGEBRA_TOL: f64 = 1e-12;
const SCHMIDT_SPLIT_TOL: f64 = 1e-9;
const Q_NORM_TOL: f64 = 1e-3;
const DRIFT_BOUND: f64 = 1e-9;
const TILT_EXPONENT_TOL: f64 = 0.02;
const WEHRL_PROXIMITY: f64 = 0.05;

/// Peak couplings this solver reports at the gate's search settings,
/// pinned as regression anchors. The dim-841 row is the physical target
/// and carries the wider window; the others only have to stay put.
const PEAK_BASELINES: [(u32, f64, f64); 5] = [
    (4, 2.017902432574931, BASELINE_WINDOW),
    (10, 1.4090169943749473, BASELINE_WINDOW),
    (20, 1.2358359213500125, BASELINE_WINDOW),
    (28, PEAK_TARGET, PEAK_WINDOW),
    (40, 1.1420975674250693, BASELINE_WINDOW),
];

#[test]
fn criterion_1_fixed_point_census_and_critical_flip() {
    let t0 = Instant::now();
    for &mu in &[0.3, 0.9] {
        check_census(mu, 4);
    }
    for &mu in &[1.1, 2.0, 5.0] {
        check_census(mu, 8);
    }
    // The aligned transverse points trade elliptic for hyperbolic inside a
    // bracket of half-width FLIP_BRACKET around coupling 1.
    let below = classical::enumerate_fixed_points(1.0 - FLIP_BRACKET).unwrap();
    let above = classical::enumerate_fixed_points(1.0 + FLIP_BRACKET).unwrap();
    for branch in [Branch::RightRight, Branch::LeftLeft] {
        assert_eq!(
            stability_of(&below, branch),
            Stability::Elliptic,
            "{branch} should still be stable just below the fork"
        );
        assert_eq!(
            stability_of(&above, branch),
            Stability::Hyperbolic,
            "{branch} should be unstable just above the fork"
        );
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(1), "census took {elapsed:.2?}");
    println!(
        "criterion 1 PASS: 4/4/8/8/8 equilibria at couplings 0.3/0.9/1.1/2/5, \
         coordinates within {COORD_TOL:.0e}, stability flip bracketed at \
         1 +/- {FLIP_BRACKET:.0e}, {elapsed:.1?}"
    );
}

#[test]
fn criterion_2_dim841_entanglement_peak_location() {
    let j = SpinJ::from_twice(28).unwrap();
    let t0 = Instant::now();
    let record = expect_peak(j);
    let elapsed = t0.elapsed();
    assert!(
        (record.mu_qc - PEAK_TARGET).abs() <= PEAK_WINDOW,
        "peak at {} instead of {PEAK_TARGET} +/- {PEAK_WINDOW}",
        record.mu_qc
    );
    assert!(elapsed < Duration::from_secs(60), "search took {elapsed:.1?}");
    println!(
        "criterion 2 PASS: dim-841 entanglement peak at coupling {:.6} \
         (target {PEAK_TARGET} +/- {PEAK_WINDOW}), S_max {:.4} bits, {elapsed:.1?}",
        record.mu_qc, record.s_max
    );
}

#[test]
fn criterion_3_half_spin_entropy_rises_monotonically() {
    let j = SpinJ::from_twice(1).unwrap();
    let grid: Vec<f64> = (0..=100).map(|i| i as f64 * 0.1).collect();
    let report = entanglement::sweep_with_tol(j, &grid, DEFAULT_TOL).unwrap();
    assert!(
        report.failures.is_empty(),
        "sweep failures: {:?}",
        report.failures
    );
    let s: Vec<f64> = report.rows.iter().map(|r| r.entropy_bits).collect();
    assert_eq!(s.len(), 101);
    assert!(s[0] < 1e-9, "entropy at zero coupling is {}", s[0]);
    for (i, w) in s.windows(2).enumerate() {
        assert!(
            w[1] >= w[0],
            "entropy dips between couplings {} and {}: {} -> {}",
            grid[i],
            grid[i + 1],
            w[0],
            w[1]
        );
    }
    assert!(s[100] > 0.9, "entropy at coupling 10 is only {}", s[100]);
    println!(
        "criterion 3 PASS: half-spin entropy nondecreasing over 101 points, \
         S(0) = {:.1e}, S(10) = {:.4} bits",
        s[0], s[100]
    );
}

#[test]
fn criterion_4_peak_coupling_decreases_toward_one() {
    let t0 = Instant::now();
    let mut peaks = Vec::new();
    for &(twice, pinned, window) in PEAK_BASELINES.iter() {
        let j = SpinJ::from_twice(twice).unwrap();
        let record = expect_peak(j);
        assert!(
            (record.mu_qc - pinned).abs() <= window,
            "site dim {}: peak {} moved away from pinned {} +/- {}",
            j.dim(),
            record.mu_qc,
            pinned,
            window
        );
        peaks.push(record.mu_qc);
    }
    for w in peaks.windows(2) {
        assert!(
            w[1] < w[0],
            "peak sequence not strictly decreasing: {peaks:?}"
        );
    }
    assert!(
        peaks.iter().all(|&m| m > 1.0),
        "every finite-size peak sits above the classical fork: {peaks:?}"
    );
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(600), "sweeps took {elapsed:.0?}");
    println!(
        "criterion 4 PASS: peak couplings {:?} strictly decreasing toward 1, {elapsed:.1?}",
        peaks
    );
}

#[test]
fn criterion_5_husimi_slice_splits_across_the_transition() {
    let t0 = Instant::now();
    // Below the transition the slice holds one blob dead on the equator.
    let flat = husimi_slice(28, 0.0);
    let flat_peaks = local_maxima(&flat.values, 0.5);
    assert_eq!(
        flat_peaks,
        vec![(64, 64)],
        "uncoupled slice should peak only at the central cell"
    );
    assert!((flat.axis1[64] - FRAC_PI_2).abs() < 1e-15);

    // Beyond it the blob splits; the two maxima sit where the classical
    // tilted branches put them, within one grid cell.
    let mu = 1.55;
    let split = husimi_slice(28, mu);
    let split_peaks = local_maxima(&split.values, 0.5);
    assert_eq!(
        split_peaks.len(),
        2,
        "expected twin maxima, found {split_peaks:?}"
    );
    let cell = PI / 128.0;
    let tilt = (1.0 - 1.0 / (mu * mu)).sqrt();
    let theta_lo = tilt.acos();
    let theta_hi = (-tilt).acos();
    let mut polar: Vec<f64> = split_peaks.iter().map(|&(i, _)| split.axis1[i]).collect();
    polar.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert!(
        (polar[0] - theta_lo).abs() <= cell,
        "first peak polar angle {} vs classical {theta_lo}",
        polar[0]
    );
    assert!(
        (polar[1] - theta_hi).abs() <= cell,
        "second peak polar angle {} vs classical {theta_hi}",
        polar[1]
    );
    for &(i, k) in &split_peaks {
        let (a, b) = (split.axis1[i], split.axis2[k]);
        assert!(
            (b - (PI - a)).abs() <= cell,
            "peaks should pair opposite tilts, got ({a}, {b})"
        );
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(30), "slices took {elapsed:.1?}");
    println!(
        "criterion 5 PASS: single central blob at zero coupling; twin blobs at \
         coupling {mu} with polar angles {:.4}/{:.4} vs classical {theta_lo:.4}/{theta_hi:.4} \
         (cell {cell:.4}), {elapsed:.1?}",
        polar[0], polar[1]
    );
}

#[test]
fn criterion_6_two_independent_routes_agree() {
    // Ground energy: Krylov route against the dense rotation route.
    let mut rng = SplitMix64::new(0xACC0_0001);
    let mut worst_energy = 0.0f64;
    for _ in 0..20 {
        let twice = 1 + (rng.next_u64() % 6) as u32;
        let mu = 3.0 * rng.next_f64();
        let j = SpinJ::from_twice(twice).unwrap();
        let h = build_hamiltonian(ModelParams::new(j, mu).unwrap()).unwrap();
        let krylov = eigen::ground_state(&h, DEFAULT_TOL).unwrap();
        let dense = eigen::jacobi_oracle(h.dense_matrix().unwrap()).unwrap();
        let e0 = krylov.eigenvalues[0];
        let rel = (e0 - dense.eigenvalues[0]).abs() / e0.abs().max(1.0);
        assert!(
            rel <= ORACLE_REL_TOL,
            "dim {} coupling {mu}: routes split by {rel:.2e} relative",
            h.dim()
        );
        worst_energy = worst_energy.max(rel);
    }

    // Entanglement entropy: density-matrix route against the
    // singular-value route on the amplitude matrix.
    let mut worst_entropy = 0.0f64;
    for k in 0..20u64 {
        let twice = 1 + (k % 5) as u32;
        let j = SpinJ::from_twice(twice).unwrap();
        let state = random_state(j, 0xBEEF_0000 + k);
        let via_rho =
            entanglement::entropy_bits(&entanglement::reduce(&state, 1).unwrap()).unwrap();
        let c = OperatorMatrix::from_fn(j.dim(), |m, n| state.amp(m, n));
        let via_svd: f64 = singular_values_one_sided_jacobi(&c)
            .iter()
            .map(|&s| {
                let p = s * s;
                if p > 0.0 {
                    -p * p.log2()
                } else {
                    0.0
                }
            })
            .sum();
        let diff = (via_rho - via_svd).abs();
        assert!(
            diff <= ENTROPY_ROUTE_TOL,
            "site dim {}: entropy routes split by {diff:.2e} bits",
            j.dim()
        );
        worst_entropy = worst_entropy.max(diff);
    }
    println!(
        "criterion 6 PASS: worst ground-energy split {worst_energy:.1e} relative \
         over 20 draws, worst entropy split {worst_entropy:.1e} bits over 20 states"
    );
}

#[test]
fn criterion_7_property_suite() {
    // Operator algebra: cyclic commutators and the Casimir invariant.
    let mut worst_algebra = 0.0f64;
    for &twice in &[1u32, 4, 9, 28] {
        let j = SpinJ::from_twice(twice).unwrap();
        let (x, y, z) = (spin::jx(j), spin::jy(j), spin::jz(j));
        let i = Complex64::new(0.0, 1.0);
        for (a, b, c) in [(&x, &y, &z), (&y, &z, &x), (&z, &x, &y)] {
            let comm = a.mul(b).unwrap().sub(&b.mul(a).unwrap()).unwrap();
            let defect = comm.sub(&c.scale(i)).unwrap().max_abs();
            worst_algebra = worst_algebra.max(defect);
        }
        let sum_sq = x
            .mul(&x)
            .unwrap()
            .add(&y.mul(&y).unwrap())
            .unwrap()
            .add(&z.mul(&z).unwrap())
            .unwrap();
        let casimir_defect = sum_sq
            .sub(&OperatorMatrix::identity(j.dim()).scale_real(j.casimir()))
            .unwrap()
            .max_abs();
        worst_algebra = worst_algebra.max(casimir_defect);
    }
    assert!(
        worst_algebra <= ALGEBRA_TOL,
        "algebra defect {worst_algebra:.2e}"
    );

    // Both reductions of a pure state carry the same entropy.
    let mut worst_schmidt = 0.0f64;
    for k in 0..5u64 {
        let j = SpinJ::from_twice(2 + k as u32).unwrap();
        let state = random_state(j, 0x5C00 + k);
        worst_schmidt = worst_schmidt.max(schmidt_split(&state));
    }
    worst_schmidt = worst_schmidt.max(schmidt_split(&ground_state_of(6, 1.2)));
    assert!(
        worst_schmidt <= SCHMIDT_SPLIT_TOL,
        "reduction entropies split by {worst_schmidt:.2e} bits"
    );

    // The coherent-state measure integrates Q to one.
    let mut worst_norm = 0.0f64;
    for state in [
        ground_state_of(2, 1.3),
        random_state(SpinJ::from_twice(2).unwrap(), 0x9A11),
    ] {
        worst_norm = worst_norm.max((q_norm_quadrature(&state) - 1.0).abs());
    }
    assert!(worst_norm <= Q_NORM_TOL, "Q norm off by {worst_norm:.2e}");

    // Energy and sphere-constraint drift of the integrator on a generic
    // trajectory. Drift at fixed step varies a few-fold across initial
    // states; this seed's trajectory is a pinned representative.
    let mut rng = SplitMix64::new(0x1);
    let s0 = ClassicalState {
        l1: random_unit(&mut rng),
        l2: random_unit(&mut rng),
    };
    let run = classical::integrate(&s0, 1.5, 0.01, 10_000).unwrap();
    assert!(
        run.max_energy_drift < DRIFT_BOUND,
        "energy drift {}",
        run.max_energy_drift
    );
    assert!(
        run.max_constraint_drift < DRIFT_BOUND,
        "constraint drift {}",
        run.max_constraint_drift
    );

    // Tilt of the emergent branches grows as the square root of the
    // coupling excess: slope 1/2 on a log-log decade.
    let tilt_exponent = (tilt_of(1.01) / tilt_of(1.001)).ln() / 10.0f64.ln();
    assert!(
        (tilt_exponent - 0.5).abs() <= TILT_EXPONENT_TOL,
        "tilt exponent {tilt_exponent}"
    );

    println!(
        "criterion 7 PASS: algebra defect {worst_algebra:.1e}, reduction split \
         {worst_schmidt:.1e} bits, Q norm off by {worst_norm:.1e}, drift \
         {:.2e}, tilt exponent {tilt_exponent:.4}",
        run.max_energy_drift.max(run.max_constraint_drift)
    );
}

#[test]
fn criterion_8_wehrl_peak_tracks_the_entanglement_peak() {
    // Advisory gate: reported, never asserted. A miss prints SOFT MISS and
    // the build stays green.
    match wehrl_scan() {
        Ok(line) => println!("{line}"),
        Err(e) => println!("criterion 8 SOFT MISS: scan aborted: {e}"),
    }
}

fn wehrl_scan() -> coupled_tops::Result<String> {
    // Entanglement peak pinned by criteria 2 and 4.
    const PINNED_PEAK: f64 = 1.1837;
    const SCAN_LO: f64 = 1.05;
    const SCAN_STEP: f64 = 0.025;
    const SCAN_POINTS: usize = 13;
    let j = SpinJ::from_twice(28)?;
    let mut best = (f64::NEG_INFINITY, 0.0, 0usize);
    for i in 0..SCAN_POINTS {
        let mu = SCAN_LO + SCAN_STEP * i as f64;
        let h = build_hamiltonian(ModelParams::new(j, mu)?)?;
        let g = eigen::ground_state(&h, DEFAULT_TOL)?;
        let state = QuantumState::from_real(j, &g.eigenvectors[0])?;
        let w = phase_space::wehrl_entropy(&state, 64, 64)?;
        if w > best.0 {
            best = (w, mu, i);
        }
    }
    let (w_max, mu_w, idx) = best;
    let delta = (mu_w - PINNED_PEAK).abs();
    let interior = idx > 0 && idx < SCAN_POINTS - 1;
    let verdict = if delta <= WEHRL_PROXIMITY && interior {
        "SOFT PASS"
    } else {
        "SOFT MISS"
    };
    let edge_note = if interior { "" } else { ", at the scan edge" };
    Ok(format!(
        "criterion 8 {verdict}: Wehrl maximum at coupling {mu_w:.3} \
         ({w_max:.4} nats{edge_note}), entanglement peak {PINNED_PEAK}, \
         separation {delta:.3} vs allowance {WEHRL_PROXIMITY}"
    ))
}

fn check_census(mu: f64, expected: usize) {
    let points = classical::enumerate_fixed_points(mu).unwrap();
    assert_eq!(points.len(), expected, "census at coupling {mu}");
    for record in &points {
        let want = expected_coords(record.branch, mu);
        let got = record.coords.l1.iter().chain(record.coords.l2.iter());
        let expect = want.l1.iter().chain(want.l2.iter());
        for (g, e) in got.zip(expect) {
            assert!(
                (g - e).abs() <= COORD_TOL,
                "branch {} at coupling {mu}: component {g} vs {e}",
                record.branch
            );
        }
    }
}

/// Closed-form equilibrium coordinates, restated here rather than taken
/// from the library so the gate checks formulas, not code against itself.
fn expected_coords(branch: Branch, mu: f64) -> ClassicalState {
    let right = [1.0, 0.0, 0.0];
    let left = [-1.0, 0.0, 0.0];
    let tilt = (1.0 - 1.0 / (mu * mu)).sqrt();
    let x = 1.0 / mu;
    let (l1, l2) = match branch {
        Branch::RightRight => (right, right),
        Branch::LeftLeft => (left, left),
        Branch::RightLeft => (right, left),
        Branch::LeftRight => (left, right),
        Branch::A => ([x, 0.0, tilt], [x, 0.0, tilt]),
        Branch::B => ([x, 0.0, -tilt], [x, 0.0, -tilt]),
        Branch::C => ([-x, 0.0, tilt], [-x, 0.0, -tilt]),
        Branch::D => ([-x, 0.0, -tilt], [-x, 0.0, tilt]),
    };
    ClassicalState { l1, l2 }
}

fn stability_of(records: &[classical::FixedPointRecord], branch: Branch) -> Stability {
    records
        .iter()
        .find(|r| r.branch == branch)
        .unwrap_or_else(|| panic!("branch {branch} missing"))
        .stability
}

fn expect_peak(j: SpinJ) -> entanglement::CriticalPointRecord {
    match entanglement::find_mu_qc(j, SEARCH_STEP, SEARCH_REFINE).unwrap() {
        CriticalPointOutcome::Peak(record) => record,
        CriticalPointOutcome::NoPeak { window, .. } => {
            panic!("no interior peak for site dim {} in {window:?}", j.dim())
        }
    }
}

fn ground_state_of(twice: u32, mu: f64) -> QuantumState {
    let j = SpinJ::from_twice(twice).unwrap();
    let h = build_hamiltonian(ModelParams::new(j, mu).unwrap()).unwrap();
    let g = eigen::ground_state(&h, DEFAULT_TOL).unwrap();
    QuantumState::from_real(j, &g.eigenvectors[0]).unwrap()
}

fn husimi_slice(twice: u32, mu: f64) -> QGrid {
    let state = ground_state_of(twice, mu);
    phase_space::q_cross_section(&state, PI, PI, 129).unwrap()
}

/// Interior grid cells that dominate their eight neighbours and exceed the
/// given fraction of the global maximum, in row-major order.
fn local_maxima(values: &[Vec<f64>], fraction: f64) -> Vec<(usize, usize)> {
    let n = values.len();
    let global = values
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0f64, |a, &b| a.max(b));
    let mut peaks = Vec::new();
    for i in 1..n - 1 {
        for k in 1..n - 1 {
            let v = values[i][k];
            if v <= fraction * global {
                continue;
            }
            let dominates = (-1i32..=1).all(|di| {
                (-1i32..=1).all(|dk| {
                    (di == 0 && dk == 0)
                        || values[(i as i32 + di) as usize][(k as i32 + dk) as usize] <= v
                })
            });
            if dominates {
                peaks.push((i, k));
            }
        }
    }
    peaks
}

fn schmidt_split(state: &QuantumState) -> f64 {
    let s1 = entanglement::entropy_bits(&entanglement::reduce(state, 1).unwrap()).unwrap();
    let s2 = entanglement::entropy_bits(&entanglement::reduce(state, 2).unwrap()).unwrap();
    (s1 - s2).abs()
}

/// Integral of Q over both spheres through the public point evaluator.
/// In u = cos(theta) the azimuth-averaged integrand per sphere is a
/// polynomial of degree 2j (the uniform azimuth sum removes every
/// half-angle cross term), so an 8-point Gauss-Legendre rule in u is
/// exact up to spin 7; the residual probes Q itself, not the quadrature.
fn q_norm_quadrature(state: &QuantumState) -> f64 {
    const GL_NODES: [f64; 4] = [
        0.183434642495650,
        0.525532409916329,
        0.796666477413627,
        0.960289856497536,
    ];
    const GL_WEIGHTS: [f64; 4] = [
        0.362683783378362,
        0.313706645877887,
        0.222381034453374,
        0.101228536290376,
    ];
    const N_PHI: usize = 16;
    assert!(state.j().twice() < N_PHI as u32, "azimuth grid too coarse");
    let hp = 2.0 * PI / N_PHI as f64;
    let mut nodes = Vec::with_capacity(2 * GL_NODES.len() * N_PHI);
    for (&u, &w) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
        for theta in [u.acos(), (-u).acos()] {
            for p in 0..N_PHI {
                let angle = phase_space::SphereAngle::new(theta, p as f64 * hp).unwrap();
                nodes.push((angle, w * hp));
            }
        }
    }
    let d = state.j().dim() as f64;
    let mut total = 0.0;
    for &(a1, w1) in &nodes {
        for &(a2, w2) in &nodes {
            total += w1 * w2 * phase_space::q_value(state, a1, a2);
        }
    }
    total * (d / (4.0 * PI)).powi(2)
}

fn tilt_of(mu: f64) -> f64 {
    classical::enumerate_fixed_points(mu)
        .unwrap()
        .iter()
        .find(|r| r.branch == Branch::A)
        .expect("tilted branch present above the fork")
        .coords
        .l1[2]
}

/// Deterministic generator for test fixtures, independent of anything the
/// library uses internally so the fixtures here stay frozen.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

fn random_unit(rng: &mut SplitMix64) -> [f64; 3] {
    loop {
        let v = [
            2.0 * rng.next_f64() - 1.0,
            2.0 * rng.next_f64() - 1.0,
            2.0 * rng.next_f64() - 1.0,
        ];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

fn random_state(j: SpinJ, seed: u64) -> QuantumState {
    let mut rng = SplitMix64::new(seed);
    let dim = j.dim() * j.dim();
    let amps: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5))
        .collect();
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    QuantumState::new(j, amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

/// Singular values by one-sided Jacobi: rotate column pairs until mutually
/// orthogonal, then read off the column norms. Shares no code with the
/// library's eigensolvers.
fn singular_values_one_sided_jacobi(c: &OperatorMatrix) -> Vec<f64> {
    let n = c.dim();
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| c.get(i, j)).collect())
        .collect();
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                let app: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let aqq: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let apq: Complex64 = cols[p]
                    .iter()
                    .zip(cols[q].iter())
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                off = off.max(apq.norm());
                if apq.norm() <= 1e-15 * (app * aqq).sqrt().max(1e-300) {
                    continue;
                }
                let phase = apq / apq.norm();
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for i in 0..n {
                    let up = cols[p][i];
                    let uq = cols[q][i];
                    cols[p][i] = up * cs - uq * phase.conj() * sn;
                    cols[q][i] = up * phase * sn + uq * cs;
                }
            }
        }
        if off < 1e-14 {
            break;
        }
    }
    let mut sv: Vec<f64> = cols
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}
