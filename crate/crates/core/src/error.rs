use core::fmt;

/// Errors surfaced by the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside the domain an operation requires.
    Domain(&'static str),
    /// A lattice point lies outside the bulk on which an expansion is valid.
    BulkViolation { k: u64, delta: f64, limit: f64 },
    /// A bound that must hold by construction failed; indicates a bug.
    InternalConsistency(&'static str),
    /// An operation needs at least one observation.
    EmptySample,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::BulkViolation { k, delta, limit } => write!(
                f,
                "bulk violation: k={k} has |delta|={:.6} beyond limit {:.6}",
                delta.abs(),
                limit
            ),
            Error::InternalConsistency(msg) => write!(f, "internal consistency: {msg}"),
            Error::EmptySample => write!(f, "empty sample"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
