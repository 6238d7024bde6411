//! Exact arithmetic kernel: scalars, polynomials, noncommutative operator
//! algebra with one derivation-style relation, series valuations, operators
//! with rational-function coefficients, root finding, and small exact
//! linear algebra.

pub mod adic;
pub mod matrix;
pub mod ore;
pub mod poly;
pub mod ratfun;
pub mod roots;
pub mod scalar;
pub mod weyl;

pub use poly::{Poly, Var};
pub use scalar::{BigFloat, Cplx, Scalar};

/// Shared error type for the whole engine.
#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("generator mismatch: {left} vs {right}")]
    GeneratorMismatch { left: String, right: String },
    #[error("operands live over different generator pairs")]
    PairMismatch,
    #[error("divisor must be monic of order one in the lower generator")]
    NonMonicDivisor,
    #[error("operator is not expressible through the grade generator")]
    NotGradedExpressible,
    #[error("substitution is not invertible")]
    NonInvertibleSubstitution,
    #[error("root iteration did not converge")]
    RootsNotConverged,
    #[error("tangential factor vanishes at index {index}; configuration is resonant")]
    Resonant { index: i64 },
    #[error("remainder map not immediate at this configuration: {0}")]
    NotImmediate(String),
    #[error("operator shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("structural invariant violated: {0}")]
    InvarianceViolated(String),
    #[error("function table domain too narrow: {0}")]
    DomainTooNarrow(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("parse error: {0}")]
    Parse(String),
}
