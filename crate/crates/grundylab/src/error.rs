use thiserror::Error;

/// Errors shared across the sequence, triangle, and game modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {n} exceeds rule horizon {horizon}")]
    OutOfHorizon { n: u64, horizon: u64 },

    #[error("invalid rule entry at n={n}: f(n)={value} violates 0 <= f(n) <= n")]
    InvalidRuleEntry { n: u64, value: u64 },

    #[error("rule table must contain at least one entry")]
    EmptyTable,

    #[error("serial rule requires a nonempty list of heaps")]
    EmptyHeaps,

    #[error("serial heap sizes must be positive (heap {index} is zero)")]
    ZeroHeap { index: usize },

    #[error("rule is not weakly increasing at n={witness}: f(n) < f(n-1)")]
    NotWeaklyIncreasing { witness: u64 },

    #[error("rule is not regular: forward difference at n={witness} is outside [0, 1]")]
    NotRegular { witness: u64 },

    #[error("first-instance order violated at position {position} (value {value})")]
    F2Violation { position: usize, value: u64 },

    #[error("prefix must start with 0, found {found}")]
    NonZeroStart { found: u64 },

    #[error("q({k}) undefined within horizon {horizon}: no j with j - f(j) > {k}")]
    QUndefined { k: u64, horizon: u64 },

    #[error("pair ({i}, {j}) out of range: row {i} starts at column {min_col}")]
    PairOutOfRange { i: u64, j: u64, min_col: u64 },

    #[error("no n <= {bound} has Grundy pair ({i}, {j})")]
    PairNotFound { i: u64, j: u64, bound: u64 },

    #[error("window of {window} terms is insufficient: {needed}")]
    InsufficientWindow { window: usize, needed: String },

    #[error("triangle of dimension {dim} determines only {determined} terms, {requested} requested")]
    InsufficientDim {
        dim: usize,
        determined: usize,
        requested: usize,
    },

    #[error("invalid triangle: {0}")]
    InvalidTriangle(String),

    #[error("column sums are not realizable: entry s_({i},{j}) would be negative")]
    UnrealizableColumnSums { i: usize, j: usize },

    #[error("column sums must be strictly increasing (c_{j} does not increase)")]
    ColumnSumsNotIncreasing { j: usize },

    #[error("arithmetic overflow in {context}")]
    Overflow { context: &'static str },

    #[error("serial position must contain at least one heap")]
    EmptyPosition,

    #[error("serial heap {index} must be positive")]
    NonPositiveHeap { index: usize },

    #[error("position size {total} exceeds the oracle bound {bound}")]
    SizeBoundExceeded { total: u64, bound: u64 },

    #[error("closed form is defined for n >= 1")]
    ClosedFormAtZero,

    #[error("no closed form for rule {rule}")]
    NoClosedForm { rule: String },

    #[error("line {line}: cannot parse {content:?} as a nonnegative integer")]
    ParseLine { line: usize, content: String },

    #[error("restriction window too short to verify periodicity (restricted length {len}, need {need})")]
    PeriodicityWindowTooShort { len: usize, need: usize },

    #[error("restriction is not periodic with period {period} on this window (mismatch at offset {witness})")]
    NotPeriodic { period: usize, witness: usize },

    #[error("pile size {n} for heap {index} exceeds rule horizon {horizon}")]
    HeapBeyondHorizon { index: usize, n: u64, horizon: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
