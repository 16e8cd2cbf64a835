//! Library side of the command-line front end: configuration handling,
//! table serialization and the validation suite. The binary in `main.rs` is
//! a thin dispatcher over these modules.

pub mod config;
pub mod emit;
pub mod validate;

use std::io;

/// Front-end errors. Everything here maps to the usage/config exit code;
/// validation-suite failures are reported through the suite itself.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid {name}: {msg}")]
    Validation { name: String, msg: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl From<phase_cavity::Error> for CliError {
    fn from(e: phase_cavity::Error) -> Self {
        match e {
            phase_cavity::Error::InvalidParam { name, reason } => CliError::Validation {
                name: name.to_string(),
                msg: reason,
            },
            phase_cavity::Error::UnknownPreset(id) => CliError::Validation {
                name: "preset".to_string(),
                msg: format!("unknown preset `{id}`"),
            },
            other => CliError::Validation {
                name: "evaluation".to_string(),
                msg: other.to_string(),
            },
        }
    }
}
