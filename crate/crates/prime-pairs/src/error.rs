//! Error type shared by the library and the CLI.
//!
//! The CLI maps variants onto its exit-code contract: usage/domain errors
//! exit 2, capacity and I/O errors exit 3, failed verification checks exit 1.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside the supported range (bad N, M too small, ...).
    #[error("parameter out of range: {0}")]
    Range(String),

    /// A mathematically undefined request (e.g. singular series at k = 0).
    #[error("domain error: {0}")]
    Domain(String),

    /// The request would exceed the configured memory budget.
    #[error("capacity exceeded: need {needed} bytes, budget {budget} bytes")]
    Capacity { needed: u64, budget: u64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// A cache or input file is malformed.
    #[error("format error: {0}")]
    Format(String),

    /// One or more verification checks failed.
    #[error("{failed} verification check(s) failed")]
    CheckFailed { failed: usize },
}

impl Error {
    /// Exit code for the CLI: 0 is success, 1 check failure, 2 usage,
    /// 3 capacity or I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Range(_) | Error::Domain(_) => 2,
            Error::Capacity { .. } | Error::Io(_) | Error::Format(_) => 3,
            Error::CheckFailed { .. } => 1,
        }
    }
}
