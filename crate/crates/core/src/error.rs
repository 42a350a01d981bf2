use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Unparseable text (rationals, points, map files).
    #[error("parse error: {0}")]
    Parse(String),
    /// Structurally invalid graph, point or map.
    #[error("invalid structure: {0}")]
    Structure(String),
    /// A precondition of an operation does not hold.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured cap (tree size, itinerary count, rational size) was hit.
    #[error("resource cap: {0}")]
    Resource(String),
    /// The Markov cut set did not close within the requested depth.
    #[error("not Markov at depth {depth}: {detail}")]
    NotMarkov { depth: usize, detail: String },
    /// Contract violation by the caller (e.g. an unverified covering chain).
    #[error("contract violation: {0}")]
    Contract(String),
    /// An internal invariant failed; always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Structure(_) | Error::Domain(_) | Error::Contract(_) | Error::NotMarkov { .. } => {
                1
            }
            Error::Resource(_) => 2,
            Error::Internal(_) => 3,
        }
    }
}
