use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported variant `{variant}` for {operation}")]
    UnsupportedVariant {
        variant: String,
        operation: &'static str,
    },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("not in class K: {0}")]
    NotInClass(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("no convergence after {iterations} iterations (best residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
