//! Classical limit of the coupled tops: unit angular-momentum vectors
//! precessing in each other's effective field, with the pitchfork
//! bifurcation of fixed points at coupling 1.
//!
//! The energy is E = L_x1 + L_x2 + mu L_z1 L_z2 on the product of unit
//! spheres. The flow is dL_i/dt = L_i x B_i with B_i = grad_{L_i} E; the
//! orientation is fixed by requiring the known equilibria to be equilibria
//! and the both-negative-x point to be an energy minimum for small mu.
//! Stability analysis happens in the canonical chart (phi_i, z_i), where
//! the two constraint directions drop out and the linearization is an
//! honest 4x4 Hamiltonian matrix.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Constraint tolerance enforced on constructed states.
const CONSTRAINT_TOL: f64 = 1e-10;

/// Looser constraint tolerance accepted by energy evaluation (it is also
/// called on mid-integration states before renormalization).
const ENERGY_CONSTRAINT_TOL: f64 = 1e-6;

/// Flow magnitude above this disqualifies a point from linearization.
const FIXED_POINT_FLOW_TOL: f64 = 1e-10;

/// Real parts and magnitudes within this of zero count as "on the axis"
/// when classifying Jacobian eigenvalues.
const CLASSIFY_TOL: f64 = 1e-8;

/// |z| beyond this is treated as sitting on the chart singularity.
const CHART_Z_LIMIT: f64 = 1.0 - 1e-12;

/// Pair of unit vectors, one per top.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalState {
    pub l1: [f64; 3],
    pub l2: [f64; 3],
}

fn norm3(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

impl ClassicalState {
    /// Both vectors must be unit length to `CONSTRAINT_TOL`.
    pub fn new(l1: [f64; 3], l2: [f64; 3]) -> Result<Self> {
        let s = ClassicalState { l1, l2 };
        s.check_constraint(CONSTRAINT_TOL)?;
        Ok(s)
    }

    /// Rescale both vectors onto the unit spheres.
    pub fn renormalized(&self) -> ClassicalState {
        let n1 = norm3(&self.l1);
        let n2 = norm3(&self.l2);
        ClassicalState {
            l1: [self.l1[0] / n1, self.l1[1] / n1, self.l1[2] / n1],
            l2: [self.l2[0] / n2, self.l2[1] / n2, self.l2[2] / n2],
        }
    }

    /// Largest deviation of either vector from unit length.
    pub fn constraint_defect(&self) -> f64 {
        (norm3(&self.l1) - 1.0)
            .abs()
            .max((norm3(&self.l2) - 1.0).abs())
    }

    fn check_constraint(&self, tol: f64) -> Result<()> {
        for (site, v) in [(1u8, &self.l1), (2u8, &self.l2)] {
            let n = norm3(v);
            if (n - 1.0).abs() > tol {
                return Err(Error::ConstraintViolation { site, norm: n });
            }
        }
        Ok(())
    }
}

/// Time derivative of a classical state.
#[derive(Debug, Clone, Copy)]
pub struct FlowDerivative {
    pub dl1: [f64; 3],
    pub dl2: [f64; 3],
}

impl FlowDerivative {
    pub fn magnitude(&self) -> f64 {
        let m1 = norm3(&self.dl1);
        let m2 = norm3(&self.dl2);
        (m1 * m1 + m2 * m2).sqrt()
    }
}

/// E = L_x1 + L_x2 + mu L_z1 L_z2.
pub fn classical_energy(s: &ClassicalState, mu: f64) -> Result<f64> {
    s.check_constraint(ENERGY_CONSTRAINT_TOL)?;
    Ok(s.l1[0] + s.l2[0] + mu * s.l1[2] * s.l2[2])
}

/// dL_i/dt = L_i x B_i with B_1 = (1, 0, mu L_z2) and B_2 = (1, 0, mu L_z1).
pub fn equations_of_motion(s: &ClassicalState, mu: f64) -> FlowDerivative {
    let b1 = [1.0, 0.0, mu * s.l2[2]];
    let b2 = [1.0, 0.0, mu * s.l1[2]];
    FlowDerivative {
        dl1: cross(&s.l1, &b1),
        dl2: cross(&s.l2, &b2),
    }
}

/// Chart coordinates (phi_i, z_i) with L_x = sqrt(1-z^2) cos(phi),
/// L_y = sqrt(1-z^2) sin(phi), L_z = z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalState {
    pub phi1: f64,
    pub z1: f64,
    pub phi2: f64,
    pub z2: f64,
}

impl CanonicalState {
    pub fn to_state(&self) -> Result<ClassicalState> {
        for (site, z) in [(1u8, self.z1), (2u8, self.z2)] {
            if z.abs() > 1.0 {
                return Err(Error::ChartSingularity { site, z });
            }
        }
        let r1 = (1.0 - self.z1 * self.z1).sqrt();
        let r2 = (1.0 - self.z2 * self.z2).sqrt();
        ClassicalState::new(
            [r1 * self.phi1.cos(), r1 * self.phi1.sin(), self.z1],
            [r2 * self.phi2.cos(), r2 * self.phi2.sin(), self.z2],
        )
    }

    pub fn from_state(s: &ClassicalState) -> Result<CanonicalState> {
        for (site, v) in [(1u8, &s.l1), (2u8, &s.l2)] {
            if v[2].abs() > CHART_Z_LIMIT {
                return Err(Error::ChartSingularity { site, z: v[2] });
            }
        }
        let wrap = |phi: f64| {
            if phi < 0.0 {
                phi + 2.0 * std::f64::consts::PI
            } else {
                phi
            }
        };
        Ok(CanonicalState {
            phi1: wrap(s.l1[1].atan2(s.l1[0])),
            z1: s.l1[2],
            phi2: wrap(s.l2[1].atan2(s.l2[0])),
            z2: s.l2[2],
        })
    }
}

/// Canonical flow (dphi1, dz1, dphi2, dz2) = (-dE/dz1, dE/dphi1, ...);
/// the orientation matches the vector flow above. Production code works
/// with the vector form; the fixed-point completeness test Newton-solves
/// this one, which keeps it next to its Jacobian below.
#[cfg_attr(not(test), allow(dead_code))]
fn canonical_flow(c: &CanonicalState, mu: f64) -> [f64; 4] {
    let r1 = (1.0 - c.z1 * c.z1).sqrt();
    let r2 = (1.0 - c.z2 * c.z2).sqrt();
    let de_dz1 = -c.z1 / r1 * c.phi1.cos() + mu * c.z2;
    let de_dz2 = -c.z2 / r2 * c.phi2.cos() + mu * c.z1;
    let de_dphi1 = -r1 * c.phi1.sin();
    let de_dphi2 = -r2 * c.phi2.sin();
    [-de_dz1, de_dphi1, -de_dz2, de_dphi2]
}

/// Analytic Jacobian of `canonical_flow` in the (phi1, z1, phi2, z2) order.
fn canonical_jacobian(c: &CanonicalState, mu: f64) -> [[f64; 4]; 4] {
    let (s1, c1) = c.phi1.sin_cos();
    let (s2, c2) = c.phi2.sin_cos();
    let w1 = 1.0 - c.z1 * c.z1;
    let w2 = 1.0 - c.z2 * c.z2;
    let r1 = w1.sqrt();
    let r2 = w2.sqrt();

    // Second derivatives of E.
    let e_p1p1 = -r1 * c1;
    let e_p2p2 = -r2 * c2;
    let e_p1z1 = c.z1 * s1 / r1;
    let e_p2z2 = c.z2 * s2 / r2;
    let e_z1z1 = -c1 / (w1 * r1);
    let e_z2z2 = -c2 / (w2 * r2);
    let e_z1z2 = mu;

    [
        [-e_p1z1, -e_z1z1, 0.0, -e_z1z2],
        [e_p1p1, e_p1z1, 0.0, 0.0],
        [0.0, -e_z1z2, -e_p2z2, -e_z2z2],
        [0.0, 0.0, e_p2p2, e_p2z2],
    ]
}

fn det4(m: &[[f64; 4]; 4]) -> f64 {
    // Cofactor expansion along the first row over 3x3 minors.
    let minor = |r: [usize; 3], c: [usize; 3]| -> f64 {
        m[r[0]][c[0]] * (m[r[1]][c[1]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[1]])
            - m[r[0]][c[1]] * (m[r[1]][c[0]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[0]])
            + m[r[0]][c[2]] * (m[r[1]][c[0]] * m[r[2]][c[1]] - m[r[1]][c[1]] * m[r[2]][c[0]])
    };
    m[0][0] * minor([1, 2, 3], [1, 2, 3]) - m[0][1] * minor([1, 2, 3], [0, 2, 3])
        + m[0][2] * minor([1, 2, 3], [0, 1, 3])
        - m[0][3] * minor([1, 2, 3], [0, 1, 2])
}

/// Eigenvalues of the 4x4 Hamiltonian Jacobian. They come in +/- pairs, so
/// the characteristic polynomial is the even quartic
/// x^4 - (tr J^2 / 2) x^2 + det J and two complex square roots finish it.
fn hamiltonian_eigenvalues(j: &[[f64; 4]; 4]) -> [Complex64; 4] {
    let mut tr_sq = 0.0;
    for r in 0..4 {
        for k in 0..4 {
            tr_sq += j[r][k] * j[k][r];
        }
    }
    let c2 = -tr_sq / 2.0;
    let c0 = det4(j);
    let disc = Complex64::new(c2 * c2 - 4.0 * c0, 0.0).sqrt();
    let lam_sq_a = (Complex64::new(-c2, 0.0) + disc) / 2.0;
    let lam_sq_b = (Complex64::new(-c2, 0.0) - disc) / 2.0;
    let ra = lam_sq_a.sqrt();
    let rb = lam_sq_b.sqrt();
    [ra, -ra, rb, -rb]
}

/// Fixed-point families. The four axial points exist for every coupling;
/// the tilted pairs appear beyond the bifurcation. Display uses arrow
/// shorthand for the axial points (direction of L_x per top).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    RightRight,
    LeftLeft,
    RightLeft,
    LeftRight,
    A,
    B,
    C,
    D,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let label = match self {
            Branch::RightRight => "\u{2192}\u{2192}",
            Branch::LeftLeft => "\u{2190}\u{2190}",
            Branch::RightLeft => "\u{2192}\u{2190}",
            Branch::LeftRight => "\u{2190}\u{2192}",
            Branch::A => "A",
            Branch::B => "B",
            Branch::C => "C",
            Branch::D => "D",
        };
        f.write_str(label)
    }
}

impl std::str::FromStr for Branch {
    type Err = Error;

    /// Accepts the display form and ASCII aliases (rr, ll, rl, lr, a..d).
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "\u{2192}\u{2192}" | "rr" => Branch::RightRight,
            "\u{2190}\u{2190}" | "ll" => Branch::LeftLeft,
            "\u{2192}\u{2190}" | "rl" => Branch::RightLeft,
            "\u{2190}\u{2192}" | "lr" => Branch::LeftRight,
            "A" | "a" => Branch::A,
            "B" | "b" => Branch::B,
            "C" | "c" => Branch::C,
            "D" | "d" => Branch::D,
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown branch label {other:?}"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Elliptic,
    Hyperbolic,
    Marginal,
}

impl std::fmt::Display for Stability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stability::Elliptic => "elliptic",
            Stability::Hyperbolic => "hyperbolic",
            Stability::Marginal => "marginal",
        })
    }
}

impl std::str::FromStr for Stability {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "elliptic" => Stability::Elliptic,
            "hyperbolic" => Stability::Hyperbolic,
            "marginal" => Stability::Marginal,
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown stability label {other:?}"
                )))
            }
        })
    }
}

#[derive(Debug, Clone)]
pub struct FixedPointRecord {
    pub coords: ClassicalState,
    pub branch: Branch,
    pub stability: Stability,
    pub jacobian_eigenvalues: [Complex64; 4],
}

fn classify(eigenvalues: &[Complex64; 4]) -> Stability {
    if eigenvalues.iter().any(|l| l.re.abs() > CLASSIFY_TOL) {
        Stability::Hyperbolic
    } else if eigenvalues.iter().all(|l| l.norm() > CLASSIFY_TOL) {
        Stability::Elliptic
    } else {
        Stability::Marginal
    }
}

fn branch_coordinates(mu: f64) -> Vec<(Branch, ClassicalState)> {
    let right = [1.0, 0.0, 0.0];
    let left = [-1.0, 0.0, 0.0];
    let mut points = vec![
        (Branch::RightRight, ClassicalState { l1: right, l2: right }),
        (Branch::LeftLeft, ClassicalState { l1: left, l2: left }),
        (Branch::RightLeft, ClassicalState { l1: right, l2: left }),
        (Branch::LeftRight, ClassicalState { l1: left, l2: right }),
    ];
    if mu > 1.0 {
        let s = (1.0 - 1.0 / (mu * mu)).sqrt();
        let x = 1.0 / mu;
        points.push((
            Branch::A,
            ClassicalState { l1: [x, 0.0, s], l2: [x, 0.0, s] },
        ));
        points.push((
            Branch::B,
            ClassicalState { l1: [x, 0.0, -s], l2: [x, 0.0, -s] },
        ));
        points.push((
            Branch::C,
            ClassicalState { l1: [-x, 0.0, s], l2: [-x, 0.0, -s] },
        ));
        points.push((
            Branch::D,
            ClassicalState { l1: [-x, 0.0, -s], l2: [-x, 0.0, s] },
        ));
    }
    points
}

fn classify_at(coords: ClassicalState, branch: Branch, mu: f64) -> Result<FixedPointRecord> {
    let flow = equations_of_motion(&coords, mu).magnitude();
    if flow > FIXED_POINT_FLOW_TOL {
        return Err(Error::NotAFixedPoint {
            flow_norm: flow,
            limit: FIXED_POINT_FLOW_TOL,
        });
    }
    let canonical = CanonicalState::from_state(&coords)?;
    let eigenvalues = hamiltonian_eigenvalues(&canonical_jacobian(&canonical, mu));
    Ok(FixedPointRecord {
        coords,
        branch,
        stability: classify(&eigenvalues),
        jacobian_eigenvalues: eigenvalues,
    })
}

/// All equilibria of the flow at the given coupling, classified. Four
/// axial points always; beyond coupling 1 the four tilted points join
/// them (their tilt closes as sqrt(1 - 1/mu^2) toward the bifurcation).
pub fn enumerate_fixed_points(mu: f64) -> Result<Vec<FixedPointRecord>> {
    if !(mu >= 0.0 && mu.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "coupling {mu} must be finite and nonnegative"
        )));
    }
    branch_coordinates(mu)
        .into_iter()
        .map(|(branch, coords)| classify_at(coords, branch, mu))
        .collect()
}

/// Classify the given equilibrium. The coordinates must sit on one of the
/// closed-form branches (flow below `FIXED_POINT_FLOW_TOL` and matching a
/// known point to 1e-8 per component).
pub fn linearize_and_classify(fp: &ClassicalState, mu: f64) -> Result<FixedPointRecord> {
    if !(mu >= 0.0 && mu.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "coupling {mu} must be finite and nonnegative"
        )));
    }
    let matched = branch_coordinates(mu).into_iter().find(|(_, c)| {
        c.l1.iter()
            .chain(c.l2.iter())
            .zip(fp.l1.iter().chain(fp.l2.iter()))
            .all(|(a, b)| (a - b).abs() < 1e-8)
    });
    match matched {
        Some((branch, _)) => classify_at(*fp, branch, mu),
        None => Err(Error::NotAFixedPoint {
            flow_norm: equations_of_motion(fp, mu).magnitude(),
            limit: FIXED_POINT_FLOW_TOL,
        }),
    }
}

/// One row of the bifurcation table.
#[derive(Debug, Clone)]
pub struct BifurcationRow {
    pub mu: f64,
    pub branch: Branch,
    pub lz1: f64,
    pub lx1: f64,
    pub stability: Stability,
}

/// Fixed-point branches sampled over a coupling grid; rows appear in grid
/// order, branches in enumeration order within each coupling.
pub fn bifurcation_diagram(mu_lo: f64, mu_hi: f64, n: usize) -> Result<Vec<BifurcationRow>> {
    if !(mu_lo < mu_hi) || !mu_lo.is_finite() || !mu_hi.is_finite() {
        return Err(Error::InvalidInput(format!(
            "bad coupling range [{mu_lo}, {mu_hi}]"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "grid needs at least 2 points, got {n}"
        )));
    }
    let mut rows = Vec::new();
    for i in 0..n {
        let mu = mu_lo + (mu_hi - mu_lo) * i as f64 / (n - 1) as f64;
        for record in enumerate_fixed_points(mu)? {
            rows.push(BifurcationRow {
                mu,
                branch: record.branch,
                lz1: record.coords.l1[2],
                lx1: record.coords.l1[0],
                stability: record.stability,
            });
        }
    }
    Ok(rows)
}

/// Sampled trajectory with the integrator's self-diagnostics.
#[derive(Debug, Clone)]
pub struct Trajectory {
    /// States after 0, 1, ..., steps steps (renormalized).
    pub states: Vec<ClassicalState>,
    /// Largest |E(t) - E(0)| along the stored states.
    pub max_energy_drift: f64,
    /// Largest per-step constraint defect before renormalization.
    pub max_constraint_drift: f64,
}

fn flow6(y: &[f64; 6], mu: f64) -> [f64; 6] {
    let s = ClassicalState {
        l1: [y[0], y[1], y[2]],
        l2: [y[3], y[4], y[5]],
    };
    let d = equations_of_motion(&s, mu);
    [d.dl1[0], d.dl1[1], d.dl1[2], d.dl2[0], d.dl2[1], d.dl2[2]]
}

/// Classic fourth-order Runge-Kutta with per-step renormalization of both
/// vectors. The constraint defect is measured before each renormalization,
/// so the reported drift reflects the raw integrator.
pub fn integrate(s0: &ClassicalState, mu: f64, dt: f64, steps: usize) -> Result<Trajectory> {
    s0.check_constraint(CONSTRAINT_TOL)?;
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidInput(format!("step size {dt} must be positive")));
    }
    let e0 = classical_energy(s0, mu)?;
    let mut y = [
        s0.l1[0], s0.l1[1], s0.l1[2], s0.l2[0], s0.l2[1], s0.l2[2],
    ];
    let mut states = Vec::with_capacity(steps + 1);
    states.push(*s0);
    let mut max_energy_drift = 0.0f64;
    let mut max_constraint_drift = 0.0f64;

    for _ in 0..steps {
        let k1 = flow6(&y, mu);
        let mut y2 = [0.0; 6];
        for i in 0..6 {
            y2[i] = y[i] + 0.5 * dt * k1[i];
        }
        let k2 = flow6(&y2, mu);
        let mut y3 = [0.0; 6];
        for i in 0..6 {
            y3[i] = y[i] + 0.5 * dt * k2[i];
        }
        let k3 = flow6(&y3, mu);
        let mut y4 = [0.0; 6];
        for i in 0..6 {
            y4[i] = y[i] + dt * k3[i];
        }
        let k4 = flow6(&y4, mu);
        for i in 0..6 {
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }

        let raw = ClassicalState {
            l1: [y[0], y[1], y[2]],
            l2: [y[3], y[4], y[5]],
        };
        max_constraint_drift = max_constraint_drift.max(raw.constraint_defect());
        let renorm = raw.renormalized();
        y = [
            renorm.l1[0], renorm.l1[1], renorm.l1[2], renorm.l2[0], renorm.l2[1], renorm.l2[2],
        ];
        let e = classical_energy(&renorm, mu)?;
        max_energy_drift = max_energy_drift.max((e - e0).abs());
        states.push(renorm);
    }

    Ok(Trajectory {
        states,
        max_energy_drift,
        max_constraint_drift,
    })
}

/// Random unit vector for property tests.
#[cfg(test)]
fn random_unit(rng: &mut crate::util::SplitMix64) -> [f64; 3] {
    loop {
        let v = [
            2.0 * rng.next_f64() - 1.0,
            2.0 * rng.next_f64() - 1.0,
            2.0 * rng.next_f64() - 1.0,
        ];
        let n = norm3(&v);
        if n > 0.1 && n <= 1.0 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}
