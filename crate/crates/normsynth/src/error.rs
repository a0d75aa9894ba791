//! Error type shared across the toolkit.

use std::path::PathBuf;

/// Unified error for configuration, domain, I/O, and parse failures.
///
/// The CLI maps [`Error::Config`] to exit code 1 and everything else to exit
/// code 2.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Invalid configuration (names the violated bound).
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Domain error from a library operation (dimension mismatch, empty
    /// input, ...).
    #[error("{0}")]
    Domain(String),

    /// I/O failure, annotated with the offending path.
    #[error("failed to {action} {path}: {source}")]
    Io {
        action: &'static str,
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A persisted artifact could not be parsed.
    #[error("parse error in {path}: {message}")]
    Parse { path: PathBuf, message: String },
}

impl Error {
    /// An I/O failure annotated with what was being done to which file.
    pub fn io(action: &'static str, path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            action,
            path: path.into(),
            source,
        }
    }

    /// A parse failure annotated with the offending file.
    pub fn parse(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
