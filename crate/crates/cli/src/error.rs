//! Errors of the command-line driver and their exit codes.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{pos}: syntax error: {msg}")]
    Syntax { pos: Pos, msg: String },

    #[error("{pos}: unresolved reference: {what} `{name}` is not declared")]
    Unresolved { pos: Pos, what: String, name: String },

    #[error("{pos}: validation error: {msg}")]
    Validation { pos: Pos, msg: String },

    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Engine(#[from] dayconv_core::error::Error),
}

impl CliError {
    pub fn syntax(pos: Pos, msg: impl Into<String>) -> Self {
        CliError::Syntax { pos, msg: msg.into() }
    }

    pub fn unresolved(pos: Pos, what: impl Into<String>, name: impl Into<String>) -> Self {
        CliError::Unresolved {
            pos,
            what: what.into(),
            name: name.into(),
        }
    }

    pub fn validation(pos: Pos, msg: impl Into<String>) -> Self {
        CliError::Validation { pos, msg: msg.into() }
    }

    /// Stable diagnostic code.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Syntax { .. } => "E-SYNTAX",
            CliError::Unresolved { .. } => "E-UNRESOLVED",
            CliError::Validation { .. } => "E-VALIDATION",
            CliError::Usage(_) => "E-USAGE",
            CliError::Io { .. } => "E-IO",
            CliError::Engine(e) if e.is_resource() => "E-CEILING",
            CliError::Engine(_) => "E-ENGINE",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(e) if e.is_resource() => 3,
            CliError::Engine(_) => 1,
            _ => 2,
        }
    }
}
