use num_bigint::BigUint;
use thiserror::Error;

/// Error type shared by all modules.
///
/// Budget-style variants (`BudgetExhausted`, `PeriodBudgetExceeded`,
/// `FactorizationIncomplete`) mean the input was legal but the configured
/// effort did not suffice; retrying with a larger budget is meaningful.
/// The other variants reject the input itself.
#[derive(Debug, Error)]
pub enum Error {
    /// The value has a square divisor; `witness` squared divides `n`.
    #[error("{n} is not squarefree ({witness}^2 divides it)")]
    NotSquarefree { n: BigUint, witness: BigUint },

    /// Field constructors require d >= 2.
    #[error("d must be at least 2, got {0}")]
    DTooSmall(BigUint),

    /// Exact field arithmetic here is bounded to word-sized d.
    #[error("d too large for exact field arithmetic: {0}")]
    DTooLarge(BigUint),

    /// The (a, b) data does not describe an integral ideal: 4a must divide
    /// disc - b^2.
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    /// Gram and reduction operations need two independent nonzero vectors.
    #[error("degenerate basis: {0}")]
    DegenerateBasis(String),

    /// A Bezout-style equation has no solution (gcd does not divide the
    /// target).
    #[error("not solvable: {0}")]
    NotSolvable(String),

    /// A claimed Pell witness fails its defining identity.
    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    /// A continued-fraction walk exceeded its step or discriminant budget.
    #[error("period budget exceeded: {0}")]
    PeriodBudgetExceeded(String),

    /// A bounded search ran out of budget before finding a result.
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    /// Invalid l (or k) parameter for a family generator: parity,
    /// coprimality, or range violation.
    #[error("bad generator parameters: {0}")]
    BadL(String),

    /// Invalid (d1, d2) pair: ordering, window, parity, or coprimality.
    #[error("bad pair: {0}")]
    BadPair(String),

    /// Family extension stepped to a nonpositive value.
    #[error("nonpositive family member: {0}")]
    NonPositive(String),

    /// A required full factorization could not be completed at the given
    /// effort.
    #[error("factorization incomplete at this effort tier")]
    FactorizationIncomplete,

    /// An output sink failed.
    #[error("sink failure: {0}")]
    SinkFailure(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 for invalid arguments or failed
    /// inputs, 3 for exhausted budgets.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExhausted(_)
            | Error::PeriodBudgetExceeded(_)
            | Error::FactorizationIncomplete => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
