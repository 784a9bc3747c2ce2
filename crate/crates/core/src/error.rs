use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid permutation: {0}")]
    Permutation(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("relator `{0}` does not map to the identity")]
    RelatorViolated(String),
    #[error("degree {0} too large for subgroup closure (limit 6)")]
    DegreeTooLarge(usize),
    #[error("geometry outside domain: {0}")]
    OutsideDomain(String),
    #[error("unknown scene `{0}`")]
    UnknownScene(String),
    #[error("faces claimed by both patch `{0}` and patch `{1}`")]
    OverlappingPatches(String, String),
    #[error("boundary chain broken: {0}")]
    ChainBroken(String),
    #[error("patch `{0}` is not consistently oriented")]
    InconsistentOrientation(String),
    #[error("scene failed validation: {0}")]
    ValidationFailed(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("operation requires degree {expected}, scene has degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("labeling does not match the raster: {0}")]
    RasterMismatch(String),
    #[error("state space {states} exceeds limit {limit}")]
    StateLimit { states: String, limit: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
