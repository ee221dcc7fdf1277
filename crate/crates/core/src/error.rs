use thiserror::Error;

/// Errors produced by this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical routine exhausted its iteration or subdivision budget.
    /// Carries the best estimate reached and its error bound.
    #[error("failed to converge: best estimate {estimate} (error bound {error_bound})")]
    Convergence { estimate: f64, error_bound: f64 },

    /// Malformed input data, such as a bad validation file or a dataset
    /// mixing numeric and categorical outcomes.
    #[error("format error: {0}")]
    Format(String),

    /// A query and its validation data disagree about the kind of report.
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
