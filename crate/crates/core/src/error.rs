use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("l must be at least 2 (got {0})")]
    InvalidL(i64),

    #[error("zeta exponent {exponent} is not coprime to the order {order}")]
    ZetaNotCoprime { exponent: i64, order: u32 },

    #[error("order {order} is not a valid root order for l = {l}")]
    InvalidOrder { l: u32, order: u32 },

    #[error("root of order {order} with l = {l} is outside the free-module theorem (order = 2 mod 4)")]
    InadmissibleRoot { l: u32, order: u32 },

    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),

    #[error("elements belong to different root specifications")]
    SpecMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("vanishing q-integer in a denominator")]
    VanishingDenominator,

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("monomial {0} is not reduced")]
    NotReduced(String),

    #[error("monomial {0} already satisfies the generator bounds")]
    NotViolating(String),

    #[error("elimination did not terminate within {0} steps")]
    Termination(usize),

    #[error("elimination relation failed validation for {0}")]
    RelationCheck(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("linear system is inconsistent (degree bound {0} too small)")]
    Inconsistent(u32),

    #[error("linear system has a {0}-dimensional kernel")]
    NotUnique(usize),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid JSON: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
