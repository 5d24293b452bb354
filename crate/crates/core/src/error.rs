use thiserror::Error;

use crate::formula::ParseError;
use crate::var::Var;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("formula is not quantifier-free")]
    NotQuantifierFree,

    #[error("size limit exceeded: {count} {what} (limit {limit})")]
    SizeLimitExceeded {
        what: &'static str,
        count: usize,
        limit: usize,
    },

    #[error("cannot eliminate `{var}`: degree {degree} in atom `{atom}` exceeds 2")]
    DegreeTooHigh { var: Var, atom: String, degree: u32 },

    #[error("no equation linear in `{0}` with a coefficient free of it")]
    NotApplicable(Var),

    #[error("arity mismatch: expected {expected} elements, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("variable `{0}` is not assigned")]
    Unassigned(Var),

    #[error("variable `{0}` is not declared")]
    Undeclared(Var),

    #[error("unsupported formula shape: {0}")]
    UnsupportedShape(String),

    #[error("non-integer coefficient {0} in a pulled-back atom")]
    NonIntegerCoefficient(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
