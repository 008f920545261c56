use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix has no rows")]
    Empty,

    #[error("row {row} has {found} entries, expected {expected}")]
    NonSquare {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("invalid label `{0}`: labels must be nonempty and contain no commas or whitespace")]
    InvalidLabel(String),

    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },

    #[error("entry ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("not a Markov chain: row {row} sums to {sum}")]
    NotMarkov { row: usize, sum: f64 },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("state set is empty")]
    EmptySet,

    #[error("dimension {dim} exceeds the cap of {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },

    #[error("set is not closed: edge {from} -> {to} leaves it")]
    NotClosed { from: usize, to: usize },

    #[error("walk enumeration guard exceeded: {what} is {value}, limit {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("invalid walk: no edge {from} -> {to}")]
    InvalidWalk { from: usize, to: usize },

    #[error("duplicate edge {from} -> {to}")]
    DuplicateEdge { from: usize, to: usize },

    #[error("edge {from} -> {to} has zero or non-finite weight")]
    InvalidWeight { from: usize, to: usize },

    #[error("row {row} has no probability mass to sample from")]
    DegenerateRow { row: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Process exit status used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionTooLarge { .. } | Error::TooLarge { .. } => 3,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
