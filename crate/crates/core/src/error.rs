use thiserror::Error;

/// Errors raised by the arithmetic and spectrum modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NonPrimeModulus(u64),

    #[error("precision must be at least 1 digit")]
    ZeroPrecision,

    #[error("mixed contexts: {0}")]
    MixedContext(String),

    #[error("element is not a unit (valuation {0} at prime {1})")]
    NotAUnit(String, u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("value has negative valuation and is not a p-adic integer")]
    NotIntegral,

    #[error("polynomial does not vanish modulo p at the starting point")]
    NotApproximateRoot,

    #[error("derivative vanishes modulo p at the starting point")]
    SingularRoot,

    #[error("the ideal is the whole ring")]
    ImproperIdeal,

    #[error("answer depends on digits beyond precision {0}")]
    PrecisionExhausted(u32),

    #[error("denominator lies in the prime ideal")]
    DenominatorInPrime,

    #[error("point set is not open: {0}")]
    NotOpen(String),

    #[error("sets do not cover the open: {0}")]
    NotACover(String),

    #[error("open set is not contained in the source: {0}")]
    NotContained(String),

    #[error("filter base must be nonempty")]
    EmptyFilterBase,

    #[error("prime {0} is not in the index set")]
    UnknownPrime(u64),

    #[error("zero has no archimedean class")]
    ZeroHasNoClass,

    #[error("invalid ring context: {0}")]
    InvalidContext(String),

    #[error("malformed input in `{field}`: {reason}")]
    Malformed { field: String, reason: String },

    #[error("diagram has no representable limit: {0}")]
    Unrepresentable(String),
}

impl Error {
    pub fn malformed(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Malformed {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
