use serde_json::json;
use std::fmt;

/// Failure reported to the caller as JSON on stdout plus a nonzero exit.
#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { kind: "invalid-input", message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            "budget" => 3,
            "internal" => 4,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "error": { "kind": self.kind, "message": self.message } })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl From<ctt::Error> for CliError {
    fn from(e: ctt::Error) -> Self {
        use ctt::Error::*;
        let kind = match &e {
            Budget(_) | RankExplosion { .. } => "budget",
            Parse(_) | Json(_) => "parse",
            Unsupported(_) => "unsupported",
            LinAlg(_) | MissingState { .. } => "internal",
            _ => "invalid-input",
        };
        CliError { kind, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError { kind: "io", message: e.to_string() }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError { kind: "parse", message: e.to_string() }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError { kind: "parse", message: e.to_string() }
    }
}

pub type CliResult<T> = Result<T, CliError>;
