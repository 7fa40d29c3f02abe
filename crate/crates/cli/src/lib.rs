//! Command-line front end for deletion-ball counts, bounds, balancing chains
//! and bound sweeps.

pub mod commands;
pub mod error;
pub mod suites;
pub mod sweep;

pub use error::{CliError, CliResult};
