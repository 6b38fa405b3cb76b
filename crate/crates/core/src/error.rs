use thiserror::Error;

/// Every failure the library can report.
///
/// Valuations drive all membership predicates, so precision problems are
/// surfaced as errors instead of being guessed around.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("division by exact zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("inconsistent (G,T)-orthogonal family: {0}")]
    InconsistentFamily(String),
    #[error("family is not a generalized MV polytope")]
    NotMV,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("Gaussian decomposition failed: leading minor {0} vanishes")]
    GaussFailure(usize),
    #[error("retry budget of {0} attempts exhausted")]
    RetryExhausted(usize),
    #[error("budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("point is not in U0(F)K/K")]
    NotInU0Orbit,
    #[error("coweight {0:?} has the wrong shape for this Iwahori paving")]
    ShapeMismatch([i64; 3]),
    #[error("Lusztig datum {0:?} is not in normal position (n1 >= n3 >= n2)")]
    NormalPositionRequired([u32; 3]),
    #[error("paving verification failed: {0}")]
    PavingVerificationFailed(String),
    #[error("valuation pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("valuation pattern {pattern:?} is not realizable over F_{p}")]
    NotRealizable { pattern: [u32; 3], p: u32 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
