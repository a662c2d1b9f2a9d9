//! Command-line front end for `tstego-core`: file I/O, the four
//! subcommands, and the benchmark experiment runner.

pub mod bench;
pub mod commands;
pub mod error;
pub mod imageio;
pub mod report;

pub use error::{CliError, Result};
