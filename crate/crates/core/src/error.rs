use thiserror::Error;

use crate::poly::ParseError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("variable `{0}` is not in the variable list")]
    UnknownVariable(String),

    #[error("complex value is not finite")]
    NonFinite,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("determinant is not constant: {0}")]
    NonConstantDeterminant(String),

    #[error("determinant is zero; use the nilpotent decomposition")]
    ZeroDeterminant,

    #[error("eigenvalues ±√({0}) are not in ℚ(i)")]
    EigenvalueOutsideField(String),

    #[error("square root extraction failed for {0}")]
    NotASquare(String),

    #[error("map is not invertible: {0}")]
    NotInvertible(String),

    #[error("not a plane cubic: {0}")]
    NotACubic(String),

    #[error("ambiguous near tolerance: {0}")]
    Ambiguous(String),

    #[error("fiber data violates Kodaira's constraints: {0}")]
    InvalidFiber(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is near-singular (condition estimate {0:.3e})")]
    NearSingular(f64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
