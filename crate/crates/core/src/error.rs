use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown generator `{name}` on line {line}")]
    UnknownGenerator { line: usize, name: String },

    #[error("relator {index} is empty after cyclic reduction")]
    EmptyRelator { index: usize },

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("presentation does not satisfy C'(1/6); Dehn's algorithm is not applicable")]
    NotSmallCancellation,

    #[error("budget exceeded: {what} (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: usize },

    #[error("cell {cell} has odd boundary length {length}; subdivide first")]
    OddCell { cell: usize, length: usize },

    #[error("wall {wall} is not settled")]
    UnsettledWall { wall: usize },

    #[error("density hypothesis violated by interval {index}: {hits}/{len} < {bound}")]
    HypothesisViolated {
        index: usize,
        hits: usize,
        len: usize,
        bound: String,
    },

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
