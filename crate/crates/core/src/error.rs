//! Error taxonomy shared by the whole crate.
//!
//! Three kinds only, chosen to map one-to-one onto process exit codes:
//! usage (bad arguments), capability (the request is well-formed but exceeds a
//! stated resource budget), and verification (a checked mathematical assertion
//! failed).

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The caller violated a precondition (bad dimension, malformed mask, ...).
    #[error("usage error: {0}")]
    Usage(String),
    /// The computation would exceed a resource budget; never silently truncated.
    #[error("capability error: {0}")]
    Capability(String),
    /// A verified assertion did not hold.
    #[error("verification failure: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn capability(msg: impl Into<String>) -> Error {
    Error::Capability(msg.into())
}
