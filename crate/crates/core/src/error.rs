use thiserror::Error;

/// Errors produced by the toolkit.
///
/// Variants split into input problems (bad graph, wrong genus, too large for
/// an oracle) and [`Error::InvariantBreach`], which signals that one of the
/// structural checks failed on a valid input. The latter is a bug, and
/// the CLI maps it to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("connected required")]
    Disconnected,

    #[error("planar embedding required (genus {genus})")]
    NotPlanar { genus: i64 },

    #[error("embedding required: input carries no rotation system")]
    MissingEmbedding,

    #[error("too large for exact oracle: n = {n} exceeds limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("invalid layering: {0}")]
    InvalidLayering(String),

    #[error("invalid subdivision: {0}")]
    InvalidSubdivision(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal invariant breach: {0}")]
    InvariantBreach(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_invariant_breach(&self) -> bool {
        matches!(self, Error::InvariantBreach(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
