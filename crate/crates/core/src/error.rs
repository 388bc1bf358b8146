use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every numeric routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A gamma-type pole (nonpositive integer argument or denominator parameter).
    #[error("{function}: pole at {at}")]
    Pole { function: &'static str, at: f64 },

    /// A series or continued fraction hit the term cap.
    #[error("{function}: no convergence after {terms} terms")]
    NonConvergence { function: &'static str, terms: usize },

    /// Argument outside the supported domain.
    #[error("{function}: {reason}")]
    Domain { function: &'static str, reason: String },

    /// μ₁ − μ₂ is not an integer, so no closed form applies.
    #[error(
        "non-integer order offset mu1 - mu2 = {offset}; closed forms need an integer offset \
         (the neighbouring integer offsets can serve as bounds)"
    )]
    NonIntegerOffset { offset: f64 },

    /// A closed form divides by a vanishing argument.
    #[error("{function}: division by zero ({what} = 0)")]
    DivisionByZero { function: &'static str, what: &'static str },

    /// Adaptive quadrature ran out of subdivisions.
    #[error("quadrature tolerance not reached: best estimate {estimate} (abs err ~ {abs_err})")]
    ToleranceNotReached { estimate: f64, abs_err: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub(crate) fn domain(function: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            function,
            reason: reason.into(),
        }
    }
}
