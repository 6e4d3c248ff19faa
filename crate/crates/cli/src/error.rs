use std::fmt;

/// How an error maps onto the process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// Bad invocation or unreadable input: exit code 1.
    Usage,
    /// The library rejected a well-formed request: exit code 2.
    Domain,
}

impl Stage {
    pub fn exit_code(self) -> i32 {
        match self {
            Stage::Usage => 1,
            Stage::Domain => 2,
        }
    }
}

/// An error destined for the `error` object of a result document.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: String,
    pub message: String,
    pub path: Option<String>,
    pub stage: Stage,
}

impl CliError {
    pub fn usage(code: &str, message: impl Into<String>) -> Self {
        CliError {
            code: code.to_string(),
            message: message.into(),
            path: None,
            stage: Stage::Usage,
        }
    }

    pub fn at(code: &str, path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError {
            path: Some(path.into()),
            ..CliError::usage(code, message)
        }
    }

    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::at(codes::SCHEMA_VIOLATION, path, message)
    }
}

impl From<formleb::Error> for CliError {
    fn from(e: formleb::Error) -> Self {
        CliError {
            code: e.code().to_string(),
            message: e.to_string(),
            path: None,
            stage: Stage::Domain,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.path {
            Some(p) => write!(f, "{} at {}: {}", self.code, p, self.message),
            None => write!(f, "{}: {}", self.code, self.message),
        }
    }
}

impl std::error::Error for CliError {}

/// Codes produced by the front end itself; library codes come from `formleb::Error::code`.
pub mod codes {
    pub const MALFORMED_JSON: &str = "MALFORMED_JSON";
    pub const SCHEMA_VIOLATION: &str = "SCHEMA_VIOLATION";
    pub const DIM_MISMATCH: &str = "DIM_MISMATCH";
    pub const KIND_MISMATCH: &str = "KIND_MISMATCH";
    pub const INVALID_TOLERANCE: &str = "INVALID_TOLERANCE";
    pub const IO_ERROR: &str = "IO_ERROR";
    pub const SELFTEST_FAILED: &str = "SELFTEST_FAILED";
}
