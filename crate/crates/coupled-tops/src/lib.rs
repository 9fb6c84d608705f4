//! Two ferromagnetically coupled quantum tops.
//!
//! A pair of spin-j angular momenta in a transverse field, coupled through
//! their z components:
//!
//! ```text
//! H = J_x1 + J_x2 + (mu / j) Jz1 Jz2
//! ```
//!
//! The crate builds the Hamiltonian exactly in the product J_z eigenbasis,
//! solves for ground states and spectra, measures entanglement between the
//! two tops, projects states onto spin coherent states for phase-space
//! pictures, and integrates the classical limit where the quantum phase
//! transition appears as a pitchfork bifurcation of fixed points.

pub mod classical;
pub mod eigen;
pub mod entanglement;
pub mod error;
pub mod matrix;
pub mod model;
pub mod phase_space;
pub mod spin;
pub mod state;

mod util;

pub use error::{Error, Result};
pub use model::{build_hamiltonian, HamiltonianHandle, ModelParams};
pub use spin::SpinJ;
pub use state::QuantumState;
