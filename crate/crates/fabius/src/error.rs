use thiserror::Error;

/// Errors surfaced by the library.
///
/// Domain violations (bad index, zero where nonzero is required) and
/// internal consistency failures are kept distinct: the latter indicate
/// that two algebraic routes which must agree did not, i.e. corruption
/// or a broken invariant, and are never silently swallowed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dyadic valuation of zero is undefined")]
    ZeroValuation,

    #[error("double factorial is undefined for {0}; the smallest admitted argument is -1")]
    DoubleFactorialRange(i64),

    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    #[error("index {got} is below the smallest admitted index {min}")]
    IndexRange { got: u64, min: u64 },

    #[error("dyadic numerator {a} outside the admissible window [0, 2^{n}]")]
    OutsideWindow { a: String, n: u32 },

    #[error("reduction step requires a strictly positive argument, got {0}")]
    NonPositive(String),

    #[error("exact evaluation (tolerance 0) requires a dyadic argument, got {0}")]
    NonDyadicExact(String),

    #[error("tolerance must be nonnegative, got {0}")]
    NegativeTolerance(String),

    #[error("cannot parse {input:?} as {expected}")]
    Parse {
        input: String,
        expected: &'static str,
    },

    #[error("requested index {requested} exceeds the configured limit {limit}")]
    LimitExceeded { requested: u32, limit: u32 },

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}
