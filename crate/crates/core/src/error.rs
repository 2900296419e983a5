//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a prime ideal: ({0})")]
    NotPrime(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
