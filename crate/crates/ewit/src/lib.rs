//! File formats, sweeps and the `ewit` command-line front end for
//! [`ewit_core`].

pub mod cli;
pub mod config;
mod error;
pub mod format;
pub mod report;
pub mod sweep;

pub use error::{CliError, Result};
