//! Doctest shim for the book under `book/`.
//!
//! mdbook renders the chapters but cannot compile their code fences
//! against workspace crates; `mdbook test` only links what sits in the
//! sysroot. Including each chapter as a module doc makes `cargo test
//! --doc -p guide` build and run every fence with the real dependency
//! graph, so the book fails CI the moment it drifts from the API.
//!
//! One module per chapter keeps test failures attributable to a file.

#[doc = include_str!("../../../README.md")]
pub mod readme {}

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/model.md")]
pub mod model {}

#[doc = include_str!("../../../book/src/ground-state.md")]
pub mod ground_state {}

#[doc = include_str!("../../../book/src/entanglement.md")]
pub mod entanglement {}

#[doc = include_str!("../../../book/src/phase-space.md")]
pub mod phase_space {}

#[doc = include_str!("../../../book/src/classical.md")]
pub mod classical {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
