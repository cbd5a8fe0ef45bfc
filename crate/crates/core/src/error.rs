use std::fmt;

use thiserror::Error;

/// One validation finding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub message: String,
}

impl Diagnostic {
    pub fn new(message: impl Into<String>) -> Self {
        Diagnostic { message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn join(diags: &[Diagnostic]) -> String {
    diags.iter().map(|d| d.message.as_str()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{line}:{col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("invalid repository: {}", join(.0))]
    Validation(Vec<Diagnostic>),
    #[error("invalid query: {0}")]
    Query(String),
    #[error("unsafe rule: {0}")]
    UnsafeRule(String),
    #[error("{what} cap of {limit} exceeded")]
    CapExceeded { what: &'static str, limit: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn parse(line: usize, col: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, col, message: message.into() }
    }
}
