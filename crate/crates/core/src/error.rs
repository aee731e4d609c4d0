use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("unknown component index {0}")]
    UnknownComponent(usize),

    #[error("invalid crossing index {0}")]
    InvalidCrossing(usize),

    #[error("diagram has no marked twist region")]
    NoTwistRegion,

    #[error("twist region mismatch: {0}")]
    TwistRegionMismatch(String),

    #[error("unsupported strand count {0} for twist region")]
    UnsupportedStrandCount(usize),

    #[error("resource budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("non-exact division: {0}")]
    NonExactDivision(String),

    #[error("malformed polynomial family: {0}")]
    MalformedFamily(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("invalid surgery slope: {0}")]
    InvalidSlope(String),
}

pub type Result<T> = std::result::Result<T, Error>;
