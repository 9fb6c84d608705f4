//! Command-line surface. Spin sizes travel as the integer 2j to dodge
//! fractional parsing; couplings accept either a single value or an
//! inclusive lo:hi:step range in one flag.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

/// Ground-state and classical-limit calculations for two coupled tops.
#[derive(Parser, Debug)]
#[command(name = "coupled-tops", version, about)]
pub struct Cli {
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format. Defaults to csv for tables and matrices, json for
    /// critical-point records.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Cap on worker threads for sweep evaluation. Results are identical
    /// for any thread count; this only bounds parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Stamp the metadata header with the wall-clock time. Off by default
    /// so identical configurations produce byte-identical files.
    #[arg(long, global = true)]
    pub timestamp: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ground-state entanglement entropy over a coupling range.
    EntanglementSweep {
        /// Spin size as the integer 2j.
        #[arg(long = "twice-j")]
        twice_j: u32,

        /// Coupling value or range lo:hi:step.
        #[arg(long)]
        mu: MuSpec,

        /// Eigensolver residual tolerance.
        #[arg(long, default_value_t = coupled_tops::eigen::DEFAULT_TOL)]
        tol: f64,
    },

    /// Locate the entanglement-maximizing coupling for each spin size.
    CriticalPoint {
        /// Comma-separated list of spin sizes as integers 2j.
        #[arg(long = "twice-j", value_delimiter = ',', required = true)]
        twice_j: Vec<u32>,

        /// Coarse scan step over the search window.
        #[arg(long, default_value_t = 0.01)]
        coarse_step: f64,

        /// Width of the final bracket around the maximum.
        #[arg(long, default_value_t = 1e-3)]
        refine_tol: f64,

        /// Eigensolver residual tolerance.
        #[arg(long, default_value_t = coupled_tops::eigen::DEFAULT_TOL)]
        tol: f64,
    },

    /// Husimi distribution of the ground state on a fixed-azimuth section.
    Qfunction {
        /// Spin size as the integer 2j.
        #[arg(long = "twice-j")]
        twice_j: u32,

        /// Coupling value.
        #[arg(long)]
        mu: MuSpec,

        /// Azimuth of the first sphere, radians in [0, 2pi).
        #[arg(long, default_value_t = 0.0)]
        phi1: f64,

        /// Azimuth of the second sphere, radians in [0, 2pi).
        #[arg(long, default_value_t = 0.0)]
        phi2: f64,

        /// Polar grid points per sphere (at least 16).
        #[arg(long, default_value_t = 129)]
        resolution: usize,

        /// Eigensolver residual tolerance.
        #[arg(long, default_value_t = coupled_tops::eigen::DEFAULT_TOL)]
        tol: f64,
    },

    /// Classical fixed points, bifurcation table, or trajectory.
    Classical {
        #[command(subcommand)]
        sub: ClassicalCommand,
    },

    /// Full eigenvalue spectrum at one coupling.
    Spectrum {
        /// Spin size as the integer 2j.
        #[arg(long = "twice-j")]
        twice_j: u32,

        /// Coupling value.
        #[arg(long)]
        mu: MuSpec,
    },

    /// Phase-space (Wehrl) entropy of the ground state over a coupling range.
    WehrlSweep {
        /// Spin size as the integer 2j.
        #[arg(long = "twice-j")]
        twice_j: u32,

        /// Coupling value or range lo:hi:step.
        #[arg(long)]
        mu: MuSpec,

        /// Quadrature points per angle (at least 32).
        #[arg(long, default_value_t = 64)]
        resolution: usize,

        /// Renyi order; 1 is the Wehrl entropy itself.
        #[arg(long, default_value_t = 1.0)]
        order: f64,

        /// Eigensolver residual tolerance.
        #[arg(long, default_value_t = coupled_tops::eigen::DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum ClassicalCommand {
    /// Enumerate and classify all equilibria at one coupling.
    FixedPoints {
        /// Coupling value.
        #[arg(long)]
        mu: MuSpec,
    },

    /// Fixed-point branches over a coupling range.
    Bifurcation {
        /// Coupling range lo:hi:step.
        #[arg(long)]
        mu: MuSpec,
    },

    /// Integrate the precession equations from a given state.
    Evolve {
        /// Coupling value.
        #[arg(long)]
        mu: MuSpec,

        /// Start from a named fixed-point branch (rr, ll, rl, lr, A..D).
        #[arg(long, conflicts_with_all = ["l1", "l2"])]
        branch: Option<String>,

        /// First top as x,y,z (unit length), e.g. --l1 0,1,0.
        #[arg(long, requires = "l2")]
        l1: Option<Triple>,

        /// Second top as x,y,z (unit length).
        #[arg(long, requires = "l1")]
        l2: Option<Triple>,

        /// Integrator step size.
        #[arg(long, default_value_t = 0.01)]
        dt: f64,

        /// Number of steps.
        #[arg(long, default_value_t = 1000)]
        steps: usize,

        /// Keep every n-th sample (the initial and final states always).
        #[arg(long, default_value_t = 1)]
        sample_every: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Coupling argument: a bare value or an inclusive lo:hi:step range.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum MuSpec {
    Scalar(f64),
    Range { lo: f64, hi: f64, step: f64 },
}

impl FromStr for MuSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |part: &str| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| format!("{part:?} is not a number"))
        };
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            if parts.len() != 3 {
                return Err(format!("expected lo:hi:step, got {s:?}"));
            }
            Ok(MuSpec::Range {
                lo: parse(parts[0])?,
                hi: parse(parts[1])?,
                step: parse(parts[2])?,
            })
        } else {
            Ok(MuSpec::Scalar(parse(s)?))
        }
    }
}

impl fmt::Display for MuSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuSpec::Scalar(v) => write!(f, "{v}"),
            MuSpec::Range { lo, hi, step } => write!(f, "{lo}:{hi}:{step}"),
        }
    }
}

impl MuSpec {
    /// The single coupling value; ranges are rejected.
    pub fn scalar(&self) -> Result<f64, String> {
        match *self {
            MuSpec::Scalar(v) if v.is_finite() => Ok(v),
            MuSpec::Scalar(v) => Err(format!("coupling {v} is not finite")),
            MuSpec::Range { .. } => Err(format!(
                "this command takes a single coupling value, got range {self}"
            )),
        }
    }

    /// Ascending grid; a scalar yields one point. Empty or backwards
    /// ranges are rejected.
    pub fn grid(&self) -> Result<Vec<f64>, String> {
        match *self {
            MuSpec::Scalar(v) => self.scalar().map(|_| vec![v]),
            MuSpec::Range { lo, hi, step } => {
                if !lo.is_finite() || !hi.is_finite() || !(step > 0.0) || lo > hi {
                    return Err(format!("empty or invalid coupling range {self}"));
                }
                let mut grid = Vec::new();
                // Index-based stepping keeps the grid free of accumulated
                // rounding; the slack admits hi itself.
                let mut i = 0u64;
                loop {
                    let mu = lo + i as f64 * step;
                    if mu > hi + 1e-9 * step {
                        break;
                    }
                    grid.push(mu);
                    i += 1;
                }
                Ok(grid)
            }
        }
    }

    /// Grid of at least two points; scalars are rejected.
    pub fn range_grid(&self) -> Result<Vec<f64>, String> {
        match self {
            MuSpec::Scalar(_) => Err(format!(
                "this command takes a coupling range lo:hi:step, got {self}"
            )),
            MuSpec::Range { .. } => {
                let grid = self.grid()?;
                if grid.len() < 2 {
                    return Err(format!("coupling range {self} has fewer than 2 points"));
                }
                Ok(grid)
            }
        }
    }
}

/// Comma-separated 3-vector flag value.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Triple(pub [f64; 3]);

impl FromStr for Triple {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(format!("expected x,y,z, got {s:?}"));
        }
        let mut v = [0.0; 3];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse::<f64>()
                .map_err(|_| format!("{part:?} is not a number"))?;
        }
        Ok(Triple(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_spec_parses_scalars_and_ranges() {
        assert_eq!("2.5".parse::<MuSpec>().unwrap(), MuSpec::Scalar(2.5));
        assert_eq!(
            "0:3:0.5".parse::<MuSpec>().unwrap(),
            MuSpec::Range { lo: 0.0, hi: 3.0, step: 0.5 }
        );
        assert!("0:3".parse::<MuSpec>().is_err());
        assert!("a:b:c".parse::<MuSpec>().is_err());
    }

    #[test]
    fn grids_are_inclusive_and_validated() {
        let g = "0:1:0.25".parse::<MuSpec>().unwrap().grid().unwrap();
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(MuSpec::Scalar(2.0).grid().unwrap(), vec![2.0]);
        assert!("5:1:0.1".parse::<MuSpec>().unwrap().grid().is_err());
        assert!("0:1:-0.1".parse::<MuSpec>().unwrap().grid().is_err());
        assert!(MuSpec::Scalar(1.0).range_grid().is_err());
    }

    #[test]
    fn grid_endpoint_survives_inexact_steps() {
        let g = "0:3:0.1".parse::<MuSpec>().unwrap().grid().unwrap();
        assert_eq!(g.len(), 31);
        assert!((g.last().unwrap() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn triple_parses_components() {
        assert_eq!(
            "0,1,0".parse::<Triple>().unwrap(),
            Triple([0.0, 1.0, 0.0])
        );
        assert!("1,2".parse::<Triple>().is_err());
    }

    #[test]
    fn cli_schema_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
