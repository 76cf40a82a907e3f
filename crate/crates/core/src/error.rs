//! Crate-wide error type.

use std::fmt;

/// Errors surfaced by the engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Inversion or division of a zero scalar.
    DivisionByZero,
    /// A sample's omega value is not consistent with `w^2 = m^2 - D1^2 - D2^2 - D3^2`.
    InconsistentSample(String),
    /// A denominator vanishes at the evaluation sample.
    DivisionByZeroAtSample,
    /// An operation that requires an X-free operator received one with X symbols.
    XSymbolsPresent(String),
    /// Index outside the valid range for the requested object.
    IndexOutOfRange(String),
    /// Name does not resolve against the catalog namespace.
    UnknownName(String),
    /// DSL division by something that is not a scalar multiple of the identity.
    NonScalarDivisor,
    /// The equation operator does not have the `i*D0 + (D0-free part)` shape.
    UnsupportedEquationOperator(String),
    /// A generator family passed where a ten-generator Poincare set is required.
    NotAPoincareSet(String),
    /// Tokenizer or parser error, with byte offset into the source line.
    Parse { offset: usize, message: String },
    /// The linear solver needs polynomial residual entries (denominator 1).
    SolverNonPolynomial(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::InconsistentSample(msg) => write!(f, "inconsistent sample: {msg}"),
            Error::DivisionByZeroAtSample => write!(f, "division by zero at sample"),
            Error::XSymbolsPresent(what) => {
                write!(f, "operator contains X symbols but {what} requires an X-free operand")
            }
            Error::IndexOutOfRange(msg) => write!(f, "index out of range: {msg}"),
            Error::UnknownName(name) => write!(f, "unknown name: {name}"),
            Error::NonScalarDivisor => write!(f, "division is only defined by scalar operators"),
            Error::UnsupportedEquationOperator(msg) => {
                write!(f, "unsupported equation operator: {msg}")
            }
            Error::NotAPoincareSet(name) => {
                write!(f, "generator set {name} is not a ten-generator Poincare family")
            }
            Error::Parse { offset, message } => write!(f, "parse error at byte {offset}: {message}"),
            Error::SolverNonPolynomial(msg) => {
                write!(f, "solver requires polynomial residuals: {msg}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
