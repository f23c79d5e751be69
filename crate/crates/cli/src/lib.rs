//! Command implementations and file formats for the `povm` tool.
//!
//! Every command returns a [`Report`] (exit code plus text for standard
//! output) or a [`CliError`] whose [`CliError::exit_code`] follows the
//! contract: 0 ok, 1 verification failure, 2 parse or I/O error, 3 leaf
//! budget overflow, 4 coverage error.

// `!(x <= tol)` is used on purpose so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod canonical;
pub mod commands;
pub mod format;

use thiserror::Error;

pub const TOOL_VERSION: &str = concat!("povm-cli ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Overflow(String),
    #[error("{0}")]
    Coverage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Parse(_) | CliError::Io { .. } => 2,
            CliError::Overflow(_) => 3,
            CliError::Coverage(_) => 4,
        }
    }
}

impl From<povm_realize::Error<f64>> for CliError {
    fn from(e: povm_realize::Error<f64>) -> Self {
        match e {
            povm_realize::Error::Coverage { .. } => CliError::Coverage(e.to_string()),
            povm_realize::Error::DecompositionOverflow { .. } => CliError::Overflow(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub code: u8,
    pub text: String,
}

impl Report {
    pub fn ok(text: impl Into<String>) -> Self {
        Self {
            code: 0,
            text: text.into(),
        }
    }
}
