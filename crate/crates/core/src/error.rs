//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands carry distinct polynomial variable sets.
    #[error("mismatched scalar variable sets")]
    VarSetMismatch,

    /// Arithmetic or structural domain violation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A family constructor was given parameters violating its defining
    /// relation or inequation.
    #[error("constraint violated: {0}")]
    Constraint(String),

    /// A verification check found a nonzero residual where exact zero was
    /// required.
    #[error("verification failure: {0}")]
    Verification(String),

    /// Series evaluation was attempted on a non-nilpotent matrix.
    #[error("matrix is not nilpotent")]
    NotNilpotent,

    /// The ODE has a singular point at the expansion origin.
    #[error("singular point at origin: {0}")]
    SingularPoint(String),

    /// A coproduct table was evaluated against a representation of a
    /// different deformation kind.
    #[error("deformation kind mismatch: {0}")]
    KindMismatch(String),

    /// Unparseable input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
