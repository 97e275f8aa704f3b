use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A caller broke an operation's precondition (e.g. `phi` on a composition not starting with 1).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A computed object contradicts a proven structural fact. Always a bug signal.
    #[error("internal consistency error: {0}")]
    Inconsistency(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
