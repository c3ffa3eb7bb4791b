use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A zeta-type series was requested outside its region of convergence.
    #[error("series diverges for exponent s = {0} (requires s > 1)")]
    DivergentArgument(f64),

    /// A parameter violated a model constraint.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Malformed or out-of-domain input data.
    #[error("data error: {0}")]
    Data(String),

    /// A numerical routine failed to reach its tolerance or a sane state.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// MCMC pilot tuning could not find a workable proposal scale.
    #[error(
        "tuning failure: pilot acceptance rate {rate:.4} below 0.01 \
         (final proposal scale {scale:.3e}, last log-posterior {log_post:.3})"
    )]
    TuningFailure { rate: f64, scale: f64, log_post: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}
