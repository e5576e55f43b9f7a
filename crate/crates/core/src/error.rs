use thiserror::Error;

/// Errors raised by validation, estimation and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("state space needs at least 2 states, got {0}")]
    TooFewStates(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("non-finite value in input")]
    NonFinite,
    #[error("negative off-diagonal rate at ({row}, {col})")]
    NegativeOffDiagonal { row: usize, col: usize },
    #[error("row {row} sums to {residual:e}, expected 0")]
    RowSumNonZero { row: usize, residual: f64 },
    #[error("negative probability at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize },
    #[error("row {row} sums to 1 with residual {residual:e}")]
    RowSumNotOne { row: usize, residual: f64 },

    #[error("duplicate state label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("path has no segments")]
    EmptyPath,
    #[error("first segment must start at time 0")]
    FirstSegmentNotZero,
    #[error("segment {index} does not start strictly after its predecessor")]
    NonIncreasingTimes { index: usize },
    #[error("segment {index} repeats the state of segment {}", index - 1)]
    SelfTransition { index: usize },
    #[error("segment {index} starts at or beyond t_max")]
    SegmentBeyondHorizon { index: usize },
    #[error("t_max must be positive and finite")]
    InvalidHorizon,
    #[error("state {state} ({label:?}) has zero total duration")]
    ZeroDurationState { state: usize, label: String },

    #[error("initial distribution is not a probability mass function")]
    InvalidInitial,
    #[error("imprecision parameter s must be non-negative and finite, got {0}")]
    NegativeS(f64),
    #[error("imprecision parameter s must be positive for open IDM bounds")]
    ZeroS,
    #[error("row {row} has no observed steps and s = 0")]
    DegenerateRow { row: usize },
    #[error("vertex enumeration would produce {count} matrices (limit {limit})")]
    TooManyVertices { count: f64, limit: usize },
    #[error("invalid hyperparameters: {0}")]
    InvalidHyper(&'static str),
    #[error("discretisation level m must be at least 1")]
    ZeroSteps,
    #[error("{0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
