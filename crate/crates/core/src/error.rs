use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("relations contain a cycle through `{0}`")]
    Cycle(String),
    #[error("poset is not of tame type")]
    NotTame,
    #[error("poset is not one-parameter")]
    NotOneParameter,
    #[error("bad split: {0}")]
    BadSplit(String),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("no representation exists: weight total {0} is below 1")]
    NoRepresentation(f64),
    #[error("value {0} is not in the continuous part of the spectral set")]
    OutsideContinuum(f64),
    #[error("singular denominator at spectral midpoint {0}")]
    SingularDenominator(f64),
    #[error("chain cap is zero; use the zero-cap description")]
    ZeroLambdaCap,
    #[error("chain cap {0} is nonzero")]
    NonzeroLambdaCap(f64),
    #[error("chain start {0} is not a discrete point")]
    StartNotDiscrete(f64),
    #[error("chain did not terminate within {0} steps")]
    StepLimit(usize),
    #[error("pair parameter {0} is outside (-1, 1)")]
    TauOutOfRange(f64),
    #[error("no 0/1 assignment reproduces eigenvalue {0}")]
    DeltaUnsolvable(f64),
    #[error("weights sum to {0}, expected 2")]
    SumNotTwo(f64),
    #[error("continuous parameter c = {0} is outside the admissible interval")]
    COutOfRange(f64),
    #[error("chain shape does not match catalog poset {0}")]
    ChainShapeMismatch(String),
    #[error("weight total {0} does not exceed 1")]
    SumNotExceedingOne(f64),
    #[error("matrix dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(format!("line {}, column {}: {}", err.line(), err.column(), err))
    }
}
