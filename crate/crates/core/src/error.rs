use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different fields ({0} vs {1})")]
    MixedFields(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("zero input where a nonzero element is required")]
    ZeroInput,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field too large for table arithmetic: q = {0}")]
    FieldTooLarge(u128),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("not a binomial c1*x^d1 + c2*x^d2: {0}")]
    NotBinomial(String),
    #[error("bad degrees: need 1 <= d1 < d2, got d1 = {d1}, d2 = {d2}")]
    BadDegrees { d1: u64, d2: u64 },
    #[error("rho is undefined for this family (l2 <= l1)")]
    RhoUndefined,
    #[error("fiber polynomial is not separable")]
    NotSeparable,
    #[error("element is not in the fiber of alpha: {0}")]
    NotInFiber(String),
    #[error("family is not additive")]
    NotAdditive,
    #[error("wrong family shape: {0}")]
    WrongShape(String),
    #[error("wrong regime: {0}")]
    WrongRegime(String),
    #[error("divided difference is not exact: {0}")]
    InexactDivision(String),
    #[error("not a p-th power: {0}")]
    NotPthPower(String),
    #[error("expansion too large: lambda-degree {0} exceeds the limit {1}")]
    TooLarge(u64, u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
