//! Command-line front end for the coupled-tops library: entanglement and
//! Wehrl sweeps, critical-point search, Husimi sections, spectra, and the
//! classical fixed-point/bifurcation/trajectory tables, all as
//! deterministic CSV or JSON artifacts.

pub mod args;
pub mod exec;
pub mod io;
