use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    InvalidPrime(i64),

    #[error("not applicable: p - 1 = {p_minus_one} must divide 2g = {two_g}")]
    NotApplicable { p_minus_one: i64, two_g: i64 },

    #[error("mismatched primes: {0} and {1}")]
    PrimeMismatch(u32, u32),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-integral result: {0}")]
    NonIntegral(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
