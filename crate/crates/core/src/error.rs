use thiserror::Error;

/// Which resource cap stopped a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetKind {
    /// S-pair queue exceeded its cap.
    Pairs,
    /// A polynomial grew past the term cap.
    Terms,
    /// Too many variables in a monomial support for the homology scan.
    Support,
    /// Too many candidate subsets in the homology scan.
    Subsets,
    /// Wall-clock deadline passed.
    Deadline,
    /// Problem size outside the supported range.
    Size,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("self-loop at vertex {0}")]
    Loop(usize),

    #[error("vertex {label} out of range 1..={n}")]
    VertexOutOfRange { label: usize, n: usize },

    #[error("graph has {0} vertices, at most 32 are supported")]
    TooManyVertices(usize),

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("budget exceeded ({kind:?}): {detail}")]
    Budget { kind: BudgetKind, detail: String },

    #[error("unsupported field characteristic {0}")]
    UnsupportedField(u64),
}

impl Error {
    pub(crate) fn budget(kind: BudgetKind, detail: impl Into<String>) -> Self {
        Error::Budget {
            kind,
            detail: detail.into(),
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
