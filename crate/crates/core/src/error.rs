use thiserror::Error;

use crate::transform::EvaluationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested function.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    /// The outer weight ratio |mu/(mu+1)| is at least one.
    #[error("invalid mu = {mu}: outer series ratio |mu/(mu+1)| >= 1")]
    InvalidMu { mu: String },

    /// The stopping rule was not satisfied within `max_terms`. The report
    /// carries the partial value reached.
    #[error(
        "series did not converge after {} terms (estimated tail {})",
        .0.terms_used,
        .0.estimated_tail.to_sci_string(6)
    )]
    NotConverged(Box<EvaluationReport>),

    /// Exact-rational evaluation was requested for a source with inexact
    /// coefficients.
    #[error("coefficient source `{0}` does not provide exact coefficients")]
    InexactCoefficient(String),

    #[error("no mu in the interval reaches the tolerance")]
    NoConvergentMu,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
