use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("permutation degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("{what} exceeds cap of {limit}")]
    CapExceeded { what: String, limit: u64 },
    #[error("subgroups belong to different parent groups")]
    ParentMismatch,
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("unknown generator label `{0}`")]
    UnknownLabel(String),
    #[error("index {index} out of range {min}..={max}")]
    IndexOutOfRange { index: usize, min: usize, max: usize },
    #[error("coset table is not closed")]
    NotClosed,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("completion failed: {0}")]
    CompletionFailure(String),
    #[error("map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("hypotheses violated: {0}")]
    Hypothesis(String),
    #[error("defect: {0}")]
    Defect(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn cap(what: impl Into<String>, limit: u64) -> Self {
        Error::CapExceeded { what: what.into(), limit }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
