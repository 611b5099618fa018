use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("attempted to invert zero")]
    InversionOfZero,
    #[error("field element does not match field spec: {0}")]
    SpecMismatch(String),
    #[error("lines {0} and {1} are proportional")]
    ProportionalLines(String, String),
    #[error("duplicate line: {0}")]
    DuplicateLine(String),
    #[error("unknown catalog entry: {0}")]
    UnknownEntry(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("unknown curve reference: {0}")]
    UnknownCurveReference(String),
    #[error("incomplete data: {0}")]
    IncompleteData(String),
    #[error("weights missing for: {0}")]
    WeightsMissing(String),
    #[error("inadmissible weights: {0}")]
    InadmissibleWeights(String),
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
