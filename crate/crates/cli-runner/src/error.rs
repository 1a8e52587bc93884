use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("tolerance exceeded: {0}")]
    Tolerance(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 0 success, 1 tolerance, 2 usage or config, 3 runtime failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Tolerance(_) => 1,
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Numeric(_) | CliError::Io { .. } => 3,
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }
}

impl From<flow_solvers::FlowError> for CliError {
    fn from(e: flow_solvers::FlowError) -> Self {
        use flow_solvers::FlowError::*;
        match e {
            Config(_) | Resume(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<hodge_spectral::HodgeError> for CliError {
    fn from(e: hodge_spectral::HodgeError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<eom_verify::EomError> for CliError {
    fn from(e: eom_verify::EomError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<chart_geometry::GeometryError> for CliError {
    fn from(e: chart_geometry::GeometryError) -> Self {
        CliError::Numeric(e.to_string())
    }
}
