use alloc::string::String;
use thiserror::Error;

/// Errors raised by the computational core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("derivation `{name}` violates the Leibniz rule on basis pair ({i}, {j})")]
    NotDerivation { name: String, i: usize, j: usize },
    #[error("semisimple quotient does not split over the rationals: {0}")]
    NonSplit(String),
    #[error("linear system is inconsistent: {0}")]
    Inconsistent(String),
    #[error("operator algebra did not close within word length {cap}")]
    CapExceeded { cap: usize },
    #[error("degree {n} needs {size} evaluation entries, above the budget of {budget}")]
    BudgetExceeded { n: usize, size: u128, budget: u128 },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("polynomial is not multilinear: {0}")]
    NotMultilinear(String),
    #[error("unknown operator in `{0}`")]
    UnknownOperator(String),
    #[error("multiplicity for {partition} is {value}, not a non-negative integer")]
    NonIntegerMultiplicity { partition: String, value: String },
    #[error("algebra does not have polynomial growth: {0}")]
    NotPolynomialGrowth(String),
    #[error("derivation generators differ between summands: {0}")]
    ArityMismatch(String),
    #[error("unknown built-in algebra `{0}`")]
    UnknownBuiltin(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
