//! Error type shared across the crate.
//!
//! Programmer errors (mixing elements from different ambient generator sets,
//! mismatched series families) panic with a message instead of returning a
//! variant; everything reachable from external input is an `Error`.

use thiserror::Error;

/// Errors produced by parsing, data ingestion, and certification.
#[derive(Debug, Error)]
pub enum Error {
    /// Text that does not parse as a ring element, partition, or monomial key.
    #[error("parse error: {0}")]
    Parse(String),

    /// A record in a Chern-number data file violates a structural invariant.
    #[error("invalid Chern data for n = {n}: {reason}")]
    ChernData { n: u32, reason: String },

    /// A data file is malformed at the document level.
    #[error("invalid data file: {0}")]
    DataFile(String),

    /// No record for K3^[n] is available but one is required.
    #[error("no Chern data record for K3^[{0}]")]
    MissingRecord(u32),

    /// A required Chern monomial is absent from a record.
    #[error("record for K3^[{n}] is missing the value of {monomial}")]
    MissingMonomial { n: u32, monomial: String },

    /// A framed torus carries no distinguished bundle.
    #[error("a framed torus has no distinguished bundle class")]
    FramedTorus,

    /// An operation needed a homogeneous element of a specific degree.
    #[error("expected a homogeneous element of degree {expected}")]
    NotHomogeneous { expected: u32 },

    /// The decoration, degree, or auxiliary data of a query is inconsistent.
    #[error("invalid query: {0}")]
    InvalidQuery(String),

    /// The requested degree has rank zero, so there is nothing to certify.
    #[error("rank 0 in degree {degree} for decoration {decoration}: nothing to certify")]
    RankZero { decoration: char, degree: u32 },

    /// An internal consistency check failed; this is a bug, never a verdict.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    /// Filesystem failure while reading or writing documents.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// JSON (de)serialization failure.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
