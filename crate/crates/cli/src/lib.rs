//! Library half of the `ellfib` command-line tool.

pub mod commands;
pub mod error;
pub mod json;
pub mod manifest;

pub use commands::Report;
pub use error::{CliError, Result};
pub use manifest::Manifest;
