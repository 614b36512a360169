use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("coefficients for lag {lag} sum to zero")]
    ZeroCoefficient { lag: usize },

    #[error("lag must be at least 1, got {lag}")]
    InvalidLag { lag: usize },

    #[error("initial segment has {got} terms but the rule has order {needed}")]
    InitTooShort { needed: usize, got: usize },

    #[error("initial terms are all zero")]
    AllZeroInit,

    #[error("no convergence after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("rule has non-integer coefficients")]
    NonIntegerCoefficients,

    #[error("back-solving needs a non-zero coefficient on the largest lag")]
    SingularBackSolve,

    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: String, hi: String },

    #[error("precision of {got} digits is insufficient, need at least {needed}")]
    InsufficientPrecision { needed: usize, got: usize },

    #[error("logarithm argument of atom {atom} is not positive")]
    NonPositiveLogArgument { atom: usize },

    #[error("trajectory diverged at index {index}")]
    Diverged { index: usize },

    #[error("word of length {len} exceeds the materialization cap {cap}")]
    MaterializationCap { len: String, cap: usize },

    #[error("permutation size {n} exceeds the supported cap {cap}")]
    PermutationCap { n: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("output error: {0}")]
    Output(String),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Output(e.to_string())
    }
}
