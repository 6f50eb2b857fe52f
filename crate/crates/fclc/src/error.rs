//! Crate-wide error type.
//!
//! Variants are grouped by how a caller should react (and how the CLI maps
//! them to exit codes): `Domain`/`Shape`/`Coloring` are bad inputs,
//! `Unsupported` means the parameters fall outside a construction's or
//! bound's validity regime, and `CapExceeded` means an enumeration would
//! visit more vectors than the configured cap allows.

use thiserror::Error;

/// Errors produced by every fallible operation in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A value violates its domain (symbol out of range, empty multiset,
    /// duplicate message vectors, invalid probability vector, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Two objects that must agree on alphabet or length do not.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// The parameters are structurally valid but outside the regime the
    /// requested construction or bound is defined for.
    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    /// An enumeration would exceed the configured cap.
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    /// No coloring with the requested number of colors exists (or the
    /// exact search exhausted its options).
    #[error("coloring failure: {0}")]
    Coloring(String),

    /// Reading or writing an external file failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// A JSON document does not match the expected schema.
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
