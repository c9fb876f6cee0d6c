use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid ADE type {family}{index}")]
    InvalidType { family: char, index: u32 },
    #[error("cannot parse configuration {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("argument out of range: {0}")]
    Argument(String),
    #[error("element is not isotropic: {0}")]
    NotIsotropic(String),
    #[error("degenerate form: Gauss sum magnitude {magnitude} differs from sqrt|A| = {expected}")]
    Degenerate { magnitude: f64, expected: f64 },
    #[error("search incomplete for {config}: budget of {budget} nodes exhausted")]
    SearchIncomplete { config: String, budget: u64 },
    #[error("boundary test called off the boundary (rank {rank}, length {length})")]
    OffBoundary { rank: u32, length: u32 },
    #[error("{path}:{line}: {reason}")]
    Table { path: String, line: usize, reason: String },
    #[error("classification incomplete: {0} configurations failed")]
    Incomplete(usize),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
