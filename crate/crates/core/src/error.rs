use thiserror::Error;

/// Errors raised anywhere in the library. User-facing input problems carry
/// enough location information to point at the offending token.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed instance: {0}")]
    Parse(String),

    #[error("invalid instance at {location}: {message}")]
    InvalidInstance { location: String, message: String },

    #[error("invalid group specification `{spec}`: {message}")]
    InvalidGroup { spec: String, message: String },

    #[error("group {group} cannot act on a {representation} instance")]
    Incompatible {
        group: String,
        representation: String,
    },

    #[error("enumeration budget exceeded: need {needed}, budget {budget}")]
    BudgetExceeded { needed: String, budget: u128 },

    #[error("size cap exceeded: {what} is {size}, cap {cap}")]
    SizeCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("parameter error: {0}")]
    Params(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("cyclotomic orders differ: {0} vs {1}")]
    SigmaMismatch(u32, u32),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
