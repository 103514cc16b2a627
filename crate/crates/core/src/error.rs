use thiserror::Error;

/// Errors from the exact arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact; remainder {remainder}")]
    Inexact { remainder: String },
    #[error("cyclotomic order {0} is not supported (expected one of 1, 2, 3, 4, 5, 6)")]
    UnsupportedOrder(u32),
    #[error("not symmetric under q -> q^-1")]
    NotSymmetric,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Errors from the determinant kernel and the verification layers above it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("size {n} exceeds the guard {guard}")]
    GuardExceeded { n: usize, guard: usize },
    #[error("determinant engines disagree on a {n}x{n} matrix")]
    EngineDisagreement { n: usize },
    #[error("cofactor expansion is limited to n <= {limit}, got {n}")]
    CofactorTooLarge { n: usize, limit: usize },
    #[error("structural theorem violated for n={n}, k={k}: {reason}")]
    StructuralViolation { n: usize, k: i64, reason: String },
    #[error("F-factorization violated at m={m}: {reason}")]
    FFactorization { m: usize, reason: String },
    #[error("q=1 recursion violated at p_{m}: {reason}")]
    FirstRootRecursion { m: usize, reason: String },
    #[error("3-exponent {numer}/4 is not an integer for n={n}")]
    NonIntegerExponent { n: usize, numer: i64 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
