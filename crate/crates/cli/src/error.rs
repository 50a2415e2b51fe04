use std::fmt;
use std::process::ExitCode;

use lrc_core::analysis::AnalysisError;
use lrc_core::designs::DesignError;
use lrc_core::gf::GfError;
use lrc_core::lrc::LrcError;
use lrc_core::mds::MdsError;

/// A failure with its exit status: 1 operation failed, 2 bad usage.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Failed(_) => ExitCode::from(1),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn failed(msg: impl Into<String>) -> CliError {
    CliError::Failed(msg.into())
}

impl From<LrcError> for CliError {
    fn from(e: LrcError) -> Self {
        match e {
            LrcError::Unrecoverable { .. }
            | LrcError::Inconsistent
            | LrcError::GroupUnavailable { .. }
            | LrcError::GroupInvalid { .. } => failed(e.to_string()),
            _ => usage(e.to_string()),
        }
    }
}

impl From<GfError> for CliError {
    fn from(e: GfError) -> Self {
        usage(e.to_string())
    }
}

impl From<DesignError> for CliError {
    fn from(e: DesignError) -> Self {
        usage(e.to_string())
    }
}

impl From<MdsError> for CliError {
    fn from(e: MdsError) -> Self {
        usage(e.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::RankDeficient { .. } => failed(e.to_string()),
            _ => usage(e.to_string()),
        }
    }
}
