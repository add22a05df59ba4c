use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{name} = {value} is outside {allowed}")]
    OutOfRange {
        name: &'static str,
        value: String,
        allowed: &'static str,
    },
    #[error("exact path requires nonnegative integer exponents")]
    NonIntegerExponent,
    #[error("enumeration needs {required} terms, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("operation requires the {expected} phase")]
    WrongPhase { expected: &'static str },
    #[error("point {0} lies outside the support")]
    OutsideSupport(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(name: &'static str, value: impl ToString, allowed: &'static str) -> Error {
    Error::OutOfRange {
        name,
        value: value.to_string(),
        allowed,
    }
}
