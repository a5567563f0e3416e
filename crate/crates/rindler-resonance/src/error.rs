use thiserror::Error;

/// Errors produced by the numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error in {context}: {message}")]
    Domain {
        context: &'static str,
        message: String,
    },

    /// The subdivision budget ran out before the requested tolerance was
    /// reached. Carries the best value obtained so far.
    #[error(
        "quadrature failed in {context}: partial value {partial:e}, achieved error {achieved:e}"
    )]
    QuadratureFailure {
        context: &'static str,
        partial: f64,
        achieved: f64,
    },

    /// Richardson extrapolation of a regulator schedule did not converge
    /// (the residuals stopped decreasing).
    #[error("regulator extrapolation diverged in {context}: residuals {residuals:?}")]
    ExtrapolationDiverged {
        context: &'static str,
        residuals: Vec<f64>,
    },

    /// Two routes that must agree (e.g. the A<->B exchange terms of the
    /// energy-shift oracle) disagreed beyond round-off.
    #[error("oracle inconsistency in {context}: {message}")]
    OracleInconsistency {
        context: &'static str,
        message: String,
    },

    #[error("evaluation produced a non-finite value in {context}")]
    NonFinite { context: &'static str },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub fn domain(context: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            context,
            message: message.into(),
        }
    }

    /// Exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain { .. } | Error::Config(_) | Error::Io(_) => 2,
            Error::QuadratureFailure { .. }
            | Error::ExtrapolationDiverged { .. }
            | Error::OracleInconsistency { .. }
            | Error::NonFinite { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
