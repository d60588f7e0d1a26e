use thiserror::Error;

/// Errors produced by graph construction, parsing and the verification routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({x}, {y}) is out of range for a {n1}+{n2} bipartite graph")]
    EdgeOutOfRange { x: usize, y: usize, n1: usize, n2: usize },

    #[error("side of size {0} exceeds the supported maximum of {max}", max = crate::graph::MAX_SIDE)]
    SideTooLarge(usize),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("family too large: complement degree bound {bound} exceeds 2; use sampling")]
    FamilyTooLarge { bound: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
