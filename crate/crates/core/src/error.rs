use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the field, polynomial and module routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("constant polynomial not allowed here")]
    ConstantPolynomial,
    #[error("constant term is zero (phi is not etale)")]
    ZeroConstantTerm,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("Psi(P) is not squarefree")]
    NotSquarefree,
    #[error("{0} does not divide Psi(P)")]
    NotADivisor(String),
    #[error("element does not lie in the subfield F_q")]
    NotInSubfield,
    #[error("extension does not contain the coefficient field")]
    NotAnExtension,
    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: String, budget: String },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn budget(needed: impl ToString, budget: impl ToString) -> Self {
        Error::BudgetExceeded {
            needed: needed.to_string(),
            budget: budget.to_string(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::BudgetExceeded { .. } => 4,
            _ => 3,
        }
    }
}
