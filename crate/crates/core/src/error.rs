use thiserror::Error;

/// Errors surfaced by the library. Most arithmetic is total; errors mark
/// contract violations (bad primes, non-monic divisors) or exhausted retry
/// budgets that indicate an internal defect.
#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial is not irreducible over Q")]
    NotIrreducible,

    #[error("prime {0} is unusable here (divides a denominator or breaks separability)")]
    BadPrime(u64),

    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("expected a monic divisor")]
    NonMonicDivisor,

    #[error("duplicate prime {0} in CRT input")]
    DuplicatePrime(u64),

    #[error("empty part has no product")]
    EmptyPart,

    #[error("partition length mismatch: {0} vs {1}")]
    PartitionLength(usize, usize),

    #[error("not an exact divisor")]
    NotExactDivisor,

    #[error("certification budget exhausted for factor index {0}")]
    CertificationBudget(usize),

    #[error("internal defect: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
