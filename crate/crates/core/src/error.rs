use thiserror::Error;

/// Errors raised by the toolkit.
///
/// `Usage` covers violated preconditions of an operation; the remaining
/// variants carry structured detail for failures callers may want to match on.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("total masses differ: {source_mass} vs {target_mass}")]
    MassMismatch { source_mass: f64, target_mass: f64 },

    #[error("coupling marginal violated by {excess:e}")]
    MarginalViolation { excess: f64 },

    #[error("test function is not 1-Lipschitz on atoms {first} and {second} (excess {excess:e})")]
    LipschitzViolation { first: usize, second: usize, excess: f64 },

    #[error("ambiguous matching, increase line count")]
    AmbiguousMatching,

    #[error("oracle inconsistency: {0}")]
    OracleInconsistent(String),

    #[error("coupling is not induced by a map")]
    NotInducedByMap,

    #[error("unknown suite selector `{0}`")]
    UnknownSuite(String),

    #[error("parameter range [{t0}, {t1}] leaves the curve domain")]
    OutOfDomain { t0: f64, t1: f64 },

    #[error("solver failed: {0}")]
    Solver(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
