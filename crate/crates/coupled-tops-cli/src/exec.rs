//! Command implementations. Each renders its artifact to a string in the
//! requested format; `execute` writes that to stdout or the output file
//! and maps failures onto the exit-code contract (1 usage, 2 numerical).

use coupled_tops::classical;
use coupled_tops::eigen;
use coupled_tops::entanglement::{self, CriticalPointOutcome, MuQcConfig, SweepReport};
use coupled_tops::phase_space;
use coupled_tops::{build_hamiltonian, Error, ModelParams, QuantumState, SpinJ};

use crate::args::{Cli, ClassicalCommand, Command, Format, MuSpec, Triple};
use crate::io::{self, Document};

/// Reported inside metadata: which member of a quasi-degenerate ground
/// doublet the solver deterministically returns.
const GROUND_MEMBER_POLICY: &str = "swap-symmetric";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Run(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Invalid-argument failures from the library are the caller's fault and
/// exit 1; anything else is a numerical failure and exits 2.
fn lift(err: Error) -> CliError {
    match err {
        Error::InvalidInput(_) => CliError::Usage(err.to_string()),
        other => CliError::Run(other.to_string()),
    }
}

pub fn execute(cli: Cli) -> i32 {
    match run(&cli) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Run(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let rendered = match cli.threads {
        Some(0) => return Err(usage("--threads must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Run(e.to_string()))?
            .install(|| render(cli)),
        None => render(cli),
    }?;
    match &cli.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::Run(format!("writing {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(rendered.as_bytes())
                .map_err(|e| CliError::Run(e.to_string()))
        }
    }
}

fn render(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::EntanglementSweep { twice_j, mu, tol } => {
            entanglement_sweep(cli, *twice_j, mu, *tol)
        }
        Command::CriticalPoint {
            twice_j,
            coarse_step,
            refine_tol,
            tol,
        } => critical_point(cli, twice_j, *coarse_step, *refine_tol, *tol),
        Command::Qfunction {
            twice_j,
            mu,
            phi1,
            phi2,
            resolution,
            tol,
        } => qfunction(cli, *twice_j, mu, *phi1, *phi2, *resolution, *tol),
        Command::Classical { sub } => match sub {
            ClassicalCommand::FixedPoints { mu } => fixed_points(cli, mu),
            ClassicalCommand::Bifurcation { mu } => bifurcation(cli, mu),
            ClassicalCommand::Evolve {
                mu,
                branch,
                l1,
                l2,
                dt,
                steps,
                sample_every,
            } => evolve(cli, mu, branch.as_deref(), *l1, *l2, *dt, *steps, *sample_every),
        },
        Command::Spectrum { twice_j, mu } => spectrum(cli, *twice_j, mu),
        Command::WehrlSweep {
            twice_j,
            mu,
            resolution,
            order,
            tol,
        } => wehrl_sweep(cli, *twice_j, mu, *resolution, *order, *tol),
    }
}

fn spin(twice_j: u32) -> Result<SpinJ, CliError> {
    SpinJ::from_twice(twice_j).map_err(|e| usage(e.to_string()))
}

fn check_tol(tol: f64) -> Result<f64, CliError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(usage(format!("--tol must be a positive number, got {tol}")))
    }
}

fn check_phi(name: &str, phi: f64) -> Result<f64, CliError> {
    if phi.is_finite() && (0.0..2.0 * std::f64::consts::PI).contains(&phi) {
        Ok(phi)
    } else {
        Err(usage(format!("--{name} must lie in [0, 2pi), got {phi}")))
    }
}

struct Meta(Vec<(String, String)>);

impl Meta {
    fn new(cli: &Cli, command: &str) -> Meta {
        let mut meta = Meta(Vec::new());
        meta.push("command", command);
        if cli.timestamp {
            let now = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            meta.push("generated_at_unix", now);
        }
        meta
    }

    fn push(&mut self, key: &str, value: impl std::fmt::Display) {
        self.0.push((key.to_string(), value.to_string()));
    }

    /// Version goes last so parameter lines stay adjacent to the command.
    fn finish(mut self) -> Vec<(String, String)> {
        self.push("version", env!("CARGO_PKG_VERSION"));
        self.0
    }
}

fn finish_table(
    format: Format,
    metadata: Vec<(String, String)>,
    header: Vec<&str>,
    rows: Vec<Vec<String>>,
    json_payload: impl FnOnce() -> serde_json::Value,
) -> String {
    match format {
        Format::Csv => io::render_csv(&Document {
            metadata,
            header: header.into_iter().map(str::to_string).collect(),
            rows,
        }),
        Format::Json => {
            let mut root = serde_json::Map::new();
            root.insert("metadata".into(), io::metadata_json(&metadata));
            match json_payload() {
                serde_json::Value::Object(extra) => {
                    for (k, v) in extra {
                        root.insert(k, v);
                    }
                }
                other => {
                    root.insert("rows".into(), other);
                }
            }
            io::render_json(&serde_json::Value::Object(root))
        }
    }
}

fn sweep_failure_lines(meta: &mut Meta, report: &SweepReport) {
    for failure in &report.failures {
        meta.push("failure", format!("mu {}: {}", failure.mu, failure.error));
    }
}

fn entanglement_sweep(cli: &Cli, twice_j: u32, mu: &MuSpec, tol: f64) -> Result<String, CliError> {
    let j = spin(twice_j)?;
    let tol = check_tol(tol)?;
    let grid = mu.grid().map_err(usage)?;
    let report = entanglement::sweep_with_tol(j, &grid, tol).map_err(lift)?;
    if report.rows.is_empty() {
        let first = report
            .failures
            .first()
            .map(|f| format!("mu {}: {}", f.mu, f.error))
            .unwrap_or_else(|| "empty report".to_string());
        return Err(CliError::Run(format!("every sweep row failed; first: {first}")));
    }

    let mut meta = Meta::new(cli, "entanglement-sweep");
    meta.push("twice_j", twice_j);
    meta.push("mu", mu);
    meta.push("grid_points", grid.len());
    meta.push("tol", io::fmt_f64(tol));
    meta.push("ground_member", GROUND_MEMBER_POLICY);
    sweep_failure_lines(&mut meta, &report);
    let metadata = meta.finish();

    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                io::fmt_f64(r.mu),
                io::fmt_f64(r.entropy_bits),
                io::fmt_f64(r.ground_energy),
                io::fmt_f64(r.gap),
                r.degenerate_flag.to_string(),
            ]
        })
        .collect();

    Ok(finish_table(
        cli.format.unwrap_or(Format::Csv),
        metadata,
        vec!["mu", "entropy_bits", "ground_energy", "gap", "degenerate_flag"],
        rows,
        || {
            serde_json::json!({
                "rows": report.rows.iter().map(|r| serde_json::json!({
                    "mu": io::json_f64(r.mu),
                    "entropy_bits": io::json_f64(r.entropy_bits),
                    "ground_energy": io::json_f64(r.ground_energy),
                    "gap": io::json_f64(r.gap),
                    "degenerate_flag": r.degenerate_flag,
                })).collect::<Vec<_>>(),
                "failures": report.failures.iter().map(|f| serde_json::json!({
                    "mu": io::json_f64(f.mu),
                    "error": f.error.to_string(),
                })).collect::<Vec<_>>(),
            })
        },
    ))
}

fn critical_point(
    cli: &Cli,
    twice_j_list: &[u32],
    coarse_step: f64,
    refine_tol: f64,
    tol: f64,
) -> Result<String, CliError> {
    let tol = check_tol(tol)?;
    let mut outcomes = Vec::new();
    for &twice_j in twice_j_list {
        let j = spin(twice_j)?;
        let cfg = MuQcConfig {
            coarse_step,
            refine_tol,
            solver_tol: tol,
            ..MuQcConfig::default()
        };
        outcomes.push((twice_j, entanglement::find_mu_qc_with(j, cfg).map_err(lift)?));
    }

    let mut meta = Meta::new(cli, "critical-point");
    meta.push(
        "twice_j",
        twice_j_list
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    meta.push("coarse_step", io::fmt_f64(coarse_step));
    meta.push("refine_tol", io::fmt_f64(refine_tol));
    meta.push("tol", io::fmt_f64(tol));
    meta.push("ground_member", GROUND_MEMBER_POLICY);
    let metadata = meta.finish();

    let rows: Vec<Vec<String>> = outcomes
        .iter()
        .map(|(twice_j, outcome)| match outcome {
            CriticalPointOutcome::Peak(r) => vec![
                twice_j.to_string(),
                "false".to_string(),
                io::fmt_f64(r.mu_qc),
                io::fmt_f64(r.s_max),
                io::fmt_f64(r.bracket.0),
                io::fmt_f64(r.bracket.1),
                io::fmt_f64(r.grid_step),
            ],
            CriticalPointOutcome::NoPeak { window, .. } => vec![
                twice_j.to_string(),
                "true".to_string(),
                String::new(),
                String::new(),
                io::fmt_f64(window.0),
                io::fmt_f64(window.1),
                String::new(),
            ],
        })
        .collect();

    Ok(finish_table(
        cli.format.unwrap_or(Format::Json),
        metadata,
        vec!["twice_j", "no_peak", "mu_qc", "S_max", "bracket_lo", "bracket_hi", "grid_step"],
        rows,
        || {
            serde_json::json!({
                "records": outcomes.iter().map(|(twice_j, outcome)| match outcome {
                    CriticalPointOutcome::Peak(r) => serde_json::json!({
                        "twice_j": twice_j,
                        "no_peak": false,
                        "mu_qc": io::json_f64(r.mu_qc),
                        "S_max": io::json_f64(r.s_max),
                        "bracket": [io::json_f64(r.bracket.0), io::json_f64(r.bracket.1)],
                        "grid_step": io::json_f64(r.grid_step),
                    }),
                    CriticalPointOutcome::NoPeak { window, .. } => serde_json::json!({
                        "twice_j": twice_j,
                        "no_peak": true,
                        "window": [io::json_f64(window.0), io::json_f64(window.1)],
                    }),
                }).collect::<Vec<_>>(),
            })
        },
    ))
}

fn ground_state_of(j: SpinJ, mu: f64, tol: f64) -> Result<(QuantumState, eigen::EigenResult), CliError> {
    let h = build_hamiltonian(ModelParams::new(j, mu).map_err(lift)?).map_err(lift)?;
    let result = eigen::ground_state(&h, tol).map_err(lift)?;
    let state = QuantumState::from_real(j, &result.eigenvectors[0]).map_err(lift)?;
    Ok((state, result))
}

fn qfunction(
    cli: &Cli,
    twice_j: u32,
    mu: &MuSpec,
    phi1: f64,
    phi2: f64,
    resolution: usize,
    tol: f64,
) -> Result<String, CliError> {
    let j = spin(twice_j)?;
    let mu = mu.scalar().map_err(usage)?;
    let tol = check_tol(tol)?;
    let phi1 = check_phi("phi1", phi1)?;
    let phi2 = check_phi("phi2", phi2)?;
    if resolution < 16 {
        return Err(usage(format!(
            "--resolution must be at least 16, got {resolution}"
        )));
    }

    let (state, result) = ground_state_of(j, mu, tol)?;
    let grid = phase_space::q_cross_section(&state, phi1, phi2, resolution).map_err(lift)?;

    let mut meta = Meta::new(cli, "qfunction");
    meta.push("twice_j", twice_j);
    meta.push("mu", io::fmt_f64(mu));
    meta.push("phi1", io::fmt_f64(phi1));
    meta.push("phi2", io::fmt_f64(phi2));
    meta.push("resolution", resolution);
    meta.push("tol", io::fmt_f64(tol));
    meta.push("ground_member", GROUND_MEMBER_POLICY);
    meta.push("ground_energy", io::fmt_f64(result.eigenvalues[0]));
    if let Some(gap) = result.gap {
        meta.push("gap", io::fmt_f64(gap));
    }
    let metadata = meta.finish();

    // Header carries the theta2 axis; each row leads with its theta1.
    let mut header = vec!["theta1".to_string()];
    header.extend(grid.axis2.iter().map(|&t| io::fmt_f64(t)));
    let rows: Vec<Vec<String>> = grid
        .axis1
        .iter()
        .zip(&grid.values)
        .map(|(&t1, row)| {
            let mut cells = vec![io::fmt_f64(t1)];
            cells.extend(row.iter().map(|&q| io::fmt_f64(q)));
            cells
        })
        .collect();

    match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => Ok(io::render_csv(&Document {
            metadata,
            header,
            rows,
        })),
        Format::Json => {
            let mut root = serde_json::Map::new();
            root.insert("metadata".into(), io::metadata_json(&metadata));
            root.insert(
                "axis1".into(),
                grid.axis1.iter().map(|&t| io::json_f64(t)).collect(),
            );
            root.insert(
                "axis2".into(),
                grid.axis2.iter().map(|&t| io::json_f64(t)).collect(),
            );
            root.insert(
                "values".into(),
                grid.values
                    .iter()
                    .map(|row| {
                        serde_json::Value::Array(row.iter().map(|&q| io::json_f64(q)).collect())
                    })
                    .collect(),
            );
            Ok(io::render_json(&serde_json::Value::Object(root)))
        }
    }
}

const FIXED_POINT_HEADER: [&str; 17] = [
    "branch", "l1x", "l1y", "l1z", "l2x", "l2y", "l2z", "energy", "stability",
    "lambda1_re", "lambda1_im", "lambda2_re", "lambda2_im", "lambda3_re", "lambda3_im",
    "lambda4_re", "lambda4_im",
];

fn fixed_point_row(record: &classical::FixedPointRecord, mu: f64) -> Vec<String> {
    let energy = classical::classical_energy(&record.coords, mu)
        .expect("enumerated coordinates satisfy the constraint");
    let mut row = vec![record.branch.to_string()];
    for v in record.coords.l1.iter().chain(record.coords.l2.iter()) {
        row.push(io::fmt_f64(*v));
    }
    row.push(io::fmt_f64(energy));
    row.push(record.stability.to_string());
    for lambda in &record.jacobian_eigenvalues {
        row.push(io::fmt_f64(lambda.re));
        row.push(io::fmt_f64(lambda.im));
    }
    row
}

fn fixed_point_json(record: &classical::FixedPointRecord, mu: f64) -> serde_json::Value {
    let energy = classical::classical_energy(&record.coords, mu)
        .expect("enumerated coordinates satisfy the constraint");
    serde_json::json!({
        "branch": record.branch.to_string(),
        "l1": record.coords.l1.iter().map(|&v| io::json_f64(v)).collect::<Vec<_>>(),
        "l2": record.coords.l2.iter().map(|&v| io::json_f64(v)).collect::<Vec<_>>(),
        "energy": io::json_f64(energy),
        "stability": record.stability.to_string(),
        "eigenvalues": record.jacobian_eigenvalues.iter()
            .map(|l| serde_json::json!([io::json_f64(l.re), io::json_f64(l.im)]))
            .collect::<Vec<_>>(),
    })
}

fn fixed_points(cli: &Cli, mu: &MuSpec) -> Result<String, CliError> {
    let mu = mu.scalar().map_err(usage)?;
    let records = classical::enumerate_fixed_points(mu).map_err(lift)?;

    let mut meta = Meta::new(cli, "classical fixed-points");
    meta.push("mu", io::fmt_f64(mu));
    meta.push("count", records.len());
    let metadata = meta.finish();

    let rows: Vec<Vec<String>> = records.iter().map(|r| fixed_point_row(r, mu)).collect();
    Ok(finish_table(
        cli.format.unwrap_or(Format::Csv),
        metadata,
        FIXED_POINT_HEADER.to_vec(),
        rows,
        || {
            serde_json::json!({
                "records": records.iter().map(|r| fixed_point_json(r, mu)).collect::<Vec<_>>(),
            })
        },
    ))
}

fn bifurcation(cli: &Cli, mu: &MuSpec) -> Result<String, CliError> {
    let grid = mu.range_grid().map_err(usage)?;
    let rows =
        classical::bifurcation_diagram(grid[0], *grid.last().unwrap(), grid.len()).map_err(lift)?;

    let mut meta = Meta::new(cli, "classical bifurcation");
    meta.push("mu", mu);
    meta.push("grid_points", grid.len());
    let metadata = meta.finish();

    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                io::fmt_f64(r.mu),
                r.branch.to_string(),
                io::fmt_f64(r.lz1),
                io::fmt_f64(r.lx1),
                r.stability.to_string(),
            ]
        })
        .collect();

    Ok(finish_table(
        cli.format.unwrap_or(Format::Csv),
        metadata,
        vec!["mu", "branch", "Lz1", "Lx1", "stability"],
        cells,
        || {
            serde_json::json!({
                "rows": rows.iter().map(|r| serde_json::json!({
                    "mu": io::json_f64(r.mu),
                    "branch": r.branch.to_string(),
                    "Lz1": io::json_f64(r.lz1),
                    "Lx1": io::json_f64(r.lx1),
                    "stability": r.stability.to_string(),
                })).collect::<Vec<_>>(),
            })
        },
    ))
}

#[allow(clippy::too_many_arguments)]
fn evolve(
    cli: &Cli,
    mu: &MuSpec,
    branch: Option<&str>,
    l1: Option<Triple>,
    l2: Option<Triple>,
    dt: f64,
    steps: usize,
    sample_every: usize,
) -> Result<String, CliError> {
    let mu = mu.scalar().map_err(usage)?;
    if sample_every == 0 {
        return Err(usage("--sample-every must be at least 1"));
    }

    let (label, s0) = match (branch, l1, l2) {
        (Some(name), None, None) => {
            let wanted: classical::Branch = name.parse().map_err(lift)?;
            let record = classical::enumerate_fixed_points(mu)
                .map_err(lift)?
                .into_iter()
                .find(|r| r.branch == wanted)
                .ok_or_else(|| {
                    usage(format!("branch {wanted} does not exist at mu = {mu}"))
                })?;
            (wanted.to_string(), record.coords)
        }
        (None, Some(Triple(a)), Some(Triple(b))) => (
            "custom".to_string(),
            classical::ClassicalState::new(a, b).map_err(|e| usage(e.to_string()))?,
        ),
        _ => {
            return Err(usage(
                "provide either --branch or both --l1 and --l2 for the initial state",
            ))
        }
    };

    let trajectory = classical::integrate(&s0, mu, dt, steps).map_err(lift)?;

    let mut meta = Meta::new(cli, "classical evolve");
    meta.push("mu", io::fmt_f64(mu));
    meta.push("initial", &label);
    meta.push("dt", io::fmt_f64(dt));
    meta.push("steps", steps);
    meta.push("sample_every", sample_every);
    meta.push("max_energy_drift", io::fmt_f64(trajectory.max_energy_drift));
    meta.push(
        "max_constraint_drift",
        io::fmt_f64(trajectory.max_constraint_drift),
    );
    let metadata = meta.finish();

    let sampled: Vec<(usize, &classical::ClassicalState)> = trajectory
        .states
        .iter()
        .enumerate()
        .filter(|(i, _)| i % sample_every == 0 || *i == steps)
        .collect();

    let rows: Vec<Vec<String>> = sampled
        .iter()
        .map(|(i, s)| {
            let energy = classical::classical_energy(s, mu)
                .expect("integrator renormalizes every stored state");
            let mut row = vec![i.to_string(), io::fmt_f64(*i as f64 * dt)];
            for v in s.l1.iter().chain(s.l2.iter()) {
                row.push(io::fmt_f64(*v));
            }
            row.push(io::fmt_f64(energy));
            row
        })
        .collect();

    Ok(finish_table(
        cli.format.unwrap_or(Format::Csv),
        metadata,
        vec!["step", "time", "l1x", "l1y", "l1z", "l2x", "l2y", "l2z", "energy"],
        rows,
        || {
            serde_json::json!({
                "rows": sampled.iter().map(|(i, s)| serde_json::json!({
                    "step": i,
                    "time": io::json_f64(*i as f64 * dt),
                    "l1": s.l1.iter().map(|&v| io::json_f64(v)).collect::<Vec<_>>(),
                    "l2": s.l2.iter().map(|&v| io::json_f64(v)).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            })
        },
    ))
}

fn spectrum(cli: &Cli, twice_j: u32, mu: &MuSpec) -> Result<String, CliError> {
    let j = spin(twice_j)?;
    let mu = mu.scalar().map_err(usage)?;
    let h = build_hamiltonian(ModelParams::new(j, mu).map_err(lift)?).map_err(lift)?;
    let result = eigen::full_spectrum(&h).map_err(lift)?;

    let mut meta = Meta::new(cli, "spectrum");
    meta.push("twice_j", twice_j);
    meta.push("mu", io::fmt_f64(mu));
    meta.push("dim", result.eigenvalues.len());
    meta.push("residual_norm", io::fmt_f64(result.residual_norm));
    let metadata = meta.finish();

    let rows: Vec<Vec<String>> = result
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &e)| vec![i.to_string(), io::fmt_f64(e)])
        .collect();

    Ok(finish_table(
        cli.format.unwrap_or(Format::Csv),
        metadata,
        vec!["index", "eigenvalue"],
        rows,
        || {
            serde_json::json!({
                "eigenvalues": result.eigenvalues.iter().map(|&e| io::json_f64(e)).collect::<Vec<_>>(),
            })
        },
    ))
}

fn wehrl_sweep(
    cli: &Cli,
    twice_j: u32,
    mu: &MuSpec,
    resolution: usize,
    order: f64,
    tol: f64,
) -> Result<String, CliError> {
    let j = spin(twice_j)?;
    let tol = check_tol(tol)?;
    let grid = mu.grid().map_err(usage)?;
    if resolution < 32 {
        return Err(usage(format!(
            "--resolution must be at least 32, got {resolution}"
        )));
    }
    if !(order > 0.0 && order.is_finite()) {
        return Err(usage(format!("--order must be a positive number, got {order}")));
    }

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &mu_value in &grid {
        let outcome = ground_state_of(j, mu_value, tol).and_then(|(state, _)| {
            phase_space::renyi_wehrl(&state, order, resolution, resolution).map_err(lift)
        });
        match outcome {
            Ok(nats) => rows.push((mu_value, nats)),
            Err(CliError::Run(msg)) => failures.push((mu_value, msg)),
            Err(other) => return Err(other),
        }
    }
    if rows.is_empty() {
        let first = failures
            .first()
            .map(|(mu, msg)| format!("mu {mu}: {msg}"))
            .unwrap_or_else(|| "empty grid".to_string());
        return Err(CliError::Run(format!("every sweep row failed; first: {first}")));
    }

    let mut meta = Meta::new(cli, "wehrl-sweep");
    meta.push("twice_j", twice_j);
    meta.push("mu", mu);
    meta.push("grid_points", grid.len());
    meta.push("resolution", resolution);
    meta.push("order", io::fmt_f64(order));
    meta.push("tol", io::fmt_f64(tol));
    meta.push("ground_member", GROUND_MEMBER_POLICY);
    for (mu_value, msg) in &failures {
        meta.push("failure", format!("mu {mu_value}: {msg}"));
    }
    let metadata = meta.finish();

    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|&(mu_value, nats)| {
            vec![
                io::fmt_f64(mu_value),
                io::fmt_f64(nats),
                io::fmt_f64(nats / std::f64::consts::LN_2),
            ]
        })
        .collect();

    Ok(finish_table(
        cli.format.unwrap_or(Format::Csv),
        metadata,
        vec!["mu", "wehrl_nats", "wehrl_bits"],
        cells,
        || {
            serde_json::json!({
                "rows": rows.iter().map(|&(mu_value, nats)| serde_json::json!({
                    "mu": io::json_f64(mu_value),
                    "wehrl_nats": io::json_f64(nats),
                    "wehrl_bits": io::json_f64(nats / std::f64::consts::LN_2),
                })).collect::<Vec<_>>(),
                "failures": failures.iter().map(|(mu_value, msg)| serde_json::json!({
                    "mu": io::json_f64(*mu_value),
                    "error": msg,
                })).collect::<Vec<_>>(),
            })
        },
    ))
}
