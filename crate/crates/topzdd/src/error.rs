//! Error type shared by every module of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building, serializing or querying.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A structural invariant of the ZDD store was violated by the caller
    /// (label out of range, ordering violation, unknown handle, ...).
    #[error("zdd invariant violated: {0}")]
    Invariant(String),

    /// A family spec string or an input file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A generator refused its parameters (too large, unsupported, ...).
    #[error("unsupported instance: {0}")]
    Unsupported(String),

    /// Enumeration exceeded the caller-supplied limit.
    #[error("enumeration exceeded limit of {0} sets")]
    EnumerationLimit(usize),

    /// A serialized container was malformed (bad magic, checksum, truncation).
    #[error("container format error: {0}")]
    Format(String),

    /// The compressed structure contradicted itself during a query. This
    /// indicates a bug or a corrupted container that passed the checksum.
    #[error("internal corruption: {0}")]
    Corruption(String),

    /// The argument to a query was out of range for this structure.
    #[error("query argument out of range: {0}")]
    OutOfRange(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
