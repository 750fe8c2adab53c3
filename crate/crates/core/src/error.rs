use thiserror::Error;

use crate::qfield::Rat;

/// Errors raised by the algebra kernel and the front-ends built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot combine elements of Q(sqrt({})) and Q(sqrt({}))", .0.0, .0.1)]
    DiscriminantMismatch(Box<(Rat, Rat)>),

    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial division is not exact")]
    NotDivisible,

    #[error("expected a homogeneous polynomial")]
    NonHomogeneous,

    #[error("real embedding of sqrt({0}) is undefined for a negative discriminant")]
    NegativeDiscriminant(Rat),

    #[error("precision exhausted after {0} bits")]
    PrecisionExhausted(u64),

    #[error("u = 0 gives a degenerate recurrence (sigma is not an automorphism)")]
    DegenerateRecurrence,

    #[error("v^2 + 4u = 0: repeated eigenvalue")]
    RepeatedEigenvalue,

    #[error("v^2 + 4u = {0} < 0: complex eigenvalues are not supported")]
    NonRealEigenvalues(Rat),

    #[error("v = 0: lambda1/lambda2 = -1 is a root of unity")]
    RootOfUnityRatio,

    #[error("the arguments share a common factor, so their spread is infinite")]
    InfiniteSpread,

    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("{0}")]
    Parse(#[from] ParseError),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure to read an expression, with the byte offset where it happened.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("exponent at {pos} must be a non-negative integer")]
    BadExponent { pos: usize },

    #[error("division at {pos} by a non-constant expression")]
    NonConstantDivisor { pos: usize },

    #[error("division by zero at {pos}")]
    DivisionByZero { pos: usize },

    #[error("sqrt literals are not accepted in input (at {pos})")]
    RadicalLiteral { pos: usize },
}
