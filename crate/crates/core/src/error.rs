use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{rule} rule needs at least {min} nodes, got {got}")]
    UnsupportedNodeCount {
        rule: &'static str,
        min: usize,
        got: usize,
    },

    #[error("collocation nodes must be strictly increasing in [0,1]: {0}")]
    InvalidNodes(String),

    #[error("grid mismatch: expected {expected:?}, got {got:?}")]
    GridMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("field contains a non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("operation requires periodic boundaries")]
    RequiresPeriodic,

    #[error("grid with {nx}x{ny} points cannot be coarsened {levels} times")]
    NotCoarsenable { nx: usize, ny: usize, levels: usize },

    #[error("multigrid did not converge in {cycles} cycles (defect {defect:e})")]
    NoConvergence { cycles: usize, defect: f64 },

    #[error("inner solve failed at node {node} in sweep {sweep}: {source}")]
    InnerSolve {
        node: usize,
        sweep: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
