use thiserror::Error;

pub type Result<T, E = LabError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("requested {requested} symbols but the materialization cap is {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("a point needs a nonempty period")]
    EmptyPeriod,

    #[error("Thue-Morse block (n={n}, j={j}) matches neither A_n·Ā_n nor Ā_n·A_n")]
    BlockMismatch { n: usize, j: usize },

    #[error("no disagreement found for period candidate {p}")]
    NoWitnessFound { p: usize },

    #[error("the quad-exponent schedule drives the rotation model, not the shift space")]
    WrongSystem,

    #[error("orbit did not close within {steps} steps")]
    OrbitNotClosed { steps: usize },

    #[error("truncated word has {available} symbols but {needed} are required")]
    TruncationExhausted { needed: usize, available: usize },

    #[error("explicit schedule has only {len} steps, {requested} requested")]
    ScheduleExhausted { requested: usize, len: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
