//! Crate-wide error type.
//!
//! Errors split into three families that the CLI maps onto distinct exit
//! codes: configuration problems (exit 2), numerical/domain failures during a
//! run (exit 3), and I/O failures (exit 4).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Configuration rejected before any computation ran: unknown keys, bad
    /// JSON, missing required fields, values outside their documented domain.
    /// The message carries the offending key path where one is known.
    #[error("config error: {0}")]
    Config(String),

    /// A numerical routine failed or a physical-domain precondition was
    /// violated mid-run (non-Hermitian input, truncation too small,
    /// eigensolver failure, tolerance not met).
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Filesystem failure while emitting results.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    /// Process exit code for this error family.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Numerical(_) => 3,
            Error::Io(_) => 4,
        }
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            other => Error::Numerical(format!("csv serialization: {other:?}")),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
