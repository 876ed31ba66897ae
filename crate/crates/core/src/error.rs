use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),

    #[error("Coxeter diagram is not of finite type: {0}")]
    NotFinite(String),

    #[error("generator {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("braid window mismatch at position {pos}: {reason}")]
    WindowMismatch { pos: usize, reason: String },

    #[error("enumeration cap of {cap} exceeded")]
    CapExceeded { cap: usize },

    #[error("group order exceeds the size guard of {guard}")]
    SizeGuard { guard: usize },

    #[error("not a Coxeter element word: {0}")]
    NotCoxeterElement(String),

    #[error("not a face of the complex: {0}")]
    NotAFace(String),

    #[error("not an edge of the complex: {0}")]
    NotAnEdge(String),

    #[error("vertex label {0} is already in use")]
    LabelCollision(String),

    #[error("h-vector {0:?} is not palindromic (not Dehn-Sommerville)")]
    NotDehnSommerville(Vec<i64>),

    #[error("the void complex has no h-vector")]
    VoidComplex,

    #[error("complex has more than {max} vertices")]
    TooManyVertices { max: usize },

    #[error("k = {k} is out of range 0..={m}")]
    KOutOfRange { k: usize, m: usize },

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("relation is not antisymmetric: {0}")]
    NotAntisymmetric(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
