use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates its documented domain (non-finite, wrong sign, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A request outside the supported regime (e.g. drive w ≤ 0).
    #[error("out of scope: {0}")]
    OutOfScope(String),

    /// A formula hit one of its stated degeneracies.
    #[error("degenerate case: {0}")]
    Degenerate(String),

    /// An iterative solver did not converge.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// A linear system or root was singular where simplicity was required.
    #[error("singular: {0}")]
    Singular(String),

    /// A discretization failed its accuracy gauge.
    #[error("accuracy failure: {0}")]
    Accuracy(String),

    /// A caller broke an interface contract (e.g. queried history before -τ).
    #[error("contract violation: {0}")]
    Contract(String),

    /// Configuration parsing or validation failure.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
