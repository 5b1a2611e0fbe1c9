use std::fmt;

use biberkit_core::analytics::AnalyticsError;
use biberkit_core::io::IoError;
use biberkit_core::pipeline::PipelineError;
use biberkit_core::verify::VerifyError;
use serde::Serialize;

/// Kind for a closed downstream pipe; the binary exits quietly on it.
pub const BROKEN_PIPE: &str = "broken_pipe";

/// A failed command. Rendered as one JSON line on stderr.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliError {
    #[serde(rename = "error")]
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn new(kind: impl Into<String>, message: impl Into<String>) -> CliError {
        CliError { kind: kind.into(), message: message.into() }
    }

    pub fn is_broken_pipe(&self) -> bool {
        self.kind == BROKEN_PIPE
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("strings serialize")
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl std::error::Error for CliError {}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        let kind = match &e {
            IoError::FileNotFound(_) => "file_not_found",
            IoError::MalformedRecord { .. } => "malformed_record",
            IoError::Io { source, .. } if source.kind() == std::io::ErrorKind::BrokenPipe => BROKEN_PIPE,
            IoError::Io { .. } => "io",
            IoError::Format { .. } => "format",
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        CliError::new("pipeline", e.to_string())
    }
}

impl From<AnalyticsError> for CliError {
    fn from(e: AnalyticsError) -> Self {
        CliError::new("analytics", e.to_string())
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        CliError::new("verify", e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        let kind = if e.kind() == std::io::ErrorKind::BrokenPipe { BROKEN_PIPE } else { "io" };
        CliError::new(kind, e.to_string())
    }
}
