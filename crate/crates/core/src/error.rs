use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {0:?} (expected p or p/q)")]
pub struct ParseRationalError(pub String);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    // numeric
    #[error("Gamma has a pole at the nonpositive integer {0}")]
    PoleAtNonpositiveInteger(i64),
    #[error("result overflows the representable range at x = {0}")]
    Overflow(f64),
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("computation produced NaN: {0}")]
    NotANumber(&'static str),

    // series
    #[error("denominator parameter {param} vanishes at term {index}, inside the summation range")]
    PoleInRange { param: Rational, index: u64 },
    #[error("series does not terminate: no numerator parameter is a nonpositive integer")]
    NotTerminating,
    #[error("reversal inapplicable: {0}")]
    ReversalInapplicable(String),
    #[error("series does not converge: {0}")]
    NotConvergent(String),
    #[error("no convergence within {terms} terms (error estimate {estimate:e})")]
    MaxTermsExceeded { terms: u64, estimate: f64 },
    #[error("tail of the split series diverges: {0}")]
    TailDivergent(String),
    #[error("invalid split request: {0}")]
    InvalidSplit(String),

    // catalog and mellin
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("unknown Mellin case {0:?}")]
    UnknownCase(String),
    #[error("parameter {0} is not a free variable of this entry")]
    UnknownParameter(&'static str),
    #[error("missing parameter {0}")]
    MissingParameter(&'static str),
    #[error("side condition violated: {condition} (value {value})")]
    SideConditionViolated { condition: String, value: Rational },
    #[error("closed form undefined: {0}")]
    PoleInClosedForm(String),
    #[error("no documented derivation edge {child} <- {parent}")]
    UnknownEdge { child: String, parent: String },
    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),
}

impl Error {
    /// Errors caused by the instance itself rather than by evaluation.
    pub fn is_invalid_instance(&self) -> bool {
        matches!(
            self,
            Error::SideConditionViolated { .. }
                | Error::UnknownParameter(_)
                | Error::MissingParameter(_)
                | Error::UnknownTheorem(_)
                | Error::UnknownCase(_)
                | Error::UnknownEdge { .. }
                | Error::Domain(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
