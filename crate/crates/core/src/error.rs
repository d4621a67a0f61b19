use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex id {id} out of range for graph with {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },

    #[error("negative edge weight {0}")]
    NegativeWeight(i64),

    #[error("duplicate vertex id {0} in vertex set")]
    DuplicateVertex(usize),

    #[error("brute-force search refused: {n} vertices exceeds cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has no resolving set (zero-weight edges make distinct vertices indistinguishable)")]
    NoResolvingSet,

    #[error("doubly resolving sets need at least 2 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("invalid probability {0}")]
    InvalidProbability(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is not a tree: {0}")]
    NotATree(String),

    #[error("strings have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("symbol {0:?} is not in the alphabet")]
    ForeignSymbol(char),

    #[error("hamming space mismatch: expected H({expected_k},{expected_a}), got H({k},{a})")]
    SpaceMismatch {
        expected_k: usize,
        expected_a: usize,
        k: usize,
        a: usize,
    },

    #[error("augmentation needs more than {budget} additional vertices")]
    BudgetExceeded { budget: usize },

    #[error("resolving set is not verified")]
    Unverified,

    #[error("sequence of length {len} is shorter than k = {k}")]
    ShortSequence { len: usize, k: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
