//! File formats, parallel sweeps and the command-line interface on top of
//! `spangen-core`.

pub mod cli;
pub mod error;
pub mod json;
pub mod parallel;
pub mod report;

pub use error::{CliError, Result};
