use std::path::PathBuf;

use thiserror::Error;
use tstego_core::StegoError;

/// Errors surfaced by the command-line front end. Each maps to a fixed
/// process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("payload of {needed_bits} frame bits does not fit: cover capacity is {capacity_bytes} bytes ({available_bits} pixels)")]
    CoverTooSmall {
        needed_bits: usize,
        available_bits: usize,
        capacity_bytes: usize,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {reason}")]
    UnsupportedImage { path: PathBuf, reason: String },

    #[error("no key given: pass --key or set STEGO_KEY")]
    EmptyKey,

    #[error(transparent)]
    CorruptHeader(StegoError),

    #[error(transparent)]
    DimensionMismatch(StegoError),

    #[error(transparent)]
    Core(StegoError),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 64,
            CliError::CoverTooSmall { .. } => 2,
            CliError::Io { .. } | CliError::UnsupportedImage { .. } | CliError::Csv(_) => 3,
            CliError::EmptyKey => 4,
            CliError::CorruptHeader(_) => 5,
            CliError::DimensionMismatch(_) => 6,
            CliError::Core(_) => 1,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn unsupported(path: impl Into<PathBuf>, reason: impl Into<String>) -> Self {
        CliError::UnsupportedImage {
            path: path.into(),
            reason: reason.into(),
        }
    }
}

impl From<StegoError> for CliError {
    fn from(err: StegoError) -> Self {
        match err {
            StegoError::EmptyKey => CliError::EmptyKey,
            StegoError::CoverTooSmall {
                needed_bits,
                available_bits,
            } => CliError::CoverTooSmall {
                needed_bits,
                available_bits,
                capacity_bytes: available_bits.saturating_sub(32) / 8,
            },
            StegoError::CorruptHeader { .. } | StegoError::TruncatedFrame { .. } => {
                CliError::CorruptHeader(err)
            }
            StegoError::DimensionMismatch { .. } => CliError::DimensionMismatch(err),
            other => CliError::Core(other),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
