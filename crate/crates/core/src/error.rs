use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid recurrence parameters: {0}")]
    InvalidParams(String),

    #[error("invalid weighted selector: {0}")]
    InvalidSelector(String),

    #[error("index {0} is negative; W_n is only defined here for n >= 0")]
    NegativeIndex(i128),

    #[error("discriminant p^2+4q = {0} is not positive")]
    NonPositiveDiscriminant(BigInt),

    #[error("field elements have different radicands ({0} vs {1})")]
    MismatchedRadicand(BigInt, BigInt),

    #[error("division by the zero field element")]
    DivisionByZeroElement,

    #[error("alpha equals one; the block estimate has a zero divisor")]
    AlphaEqualsOne,

    #[error("invalid summation spec: {0}")]
    InvalidSpec(String),

    #[error("denominator D_k is zero at k = {0}")]
    ZeroDenominatorTerm(u64),

    #[error("denominator D_k at k = {0} does not have the sign of the leading coefficient")]
    NonPositiveDenominator(u64),

    #[error("monotone decrease of |1/D_k| could not be established from k = {0}")]
    MonotonicityNotEstablished(u64),

    #[error("enclosure straddles zero and cannot be inverted")]
    IntervalStraddlesZero,

    #[error("estimate errors are indistinguishable from zero (exact case)")]
    DegenerateErrors,

    #[error("only {0} rows have a resolved nonzero error; at least 5 are needed")]
    InsufficientRows(usize),

    #[error("at n = {n}: {source}")]
    AtRow {
        n: u64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Strips any `AtRow` wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtRow { source, .. } => source.root(),
            e => e,
        }
    }

    pub(crate) fn at_row(n: u64) -> impl FnOnce(Error) -> Error {
        move |e| Error::AtRow {
            n,
            source: Box::new(e),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
