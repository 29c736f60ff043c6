use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("dimension {0} outside supported range 1..={max}", max = crate::algebra::MAX_DIMENSION)]
    DimensionOutOfRange(u32),

    #[error("oracle product limited to dimension {limit}, got {got}")]
    OracleTooLarge { got: u32, limit: u32 },

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("{form} representation limited to dimension {limit}, got {dimension}")]
    RepresentationTooLarge {
        form: &'static str,
        dimension: u32,
        limit: u32,
    },

    #[error("generator index {index} outside 1..={dimension}")]
    GeneratorOutOfRange { index: u32, dimension: u32 },

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("vector length must be at least 1")]
    EmptyVector,

    #[error("bundle needs at least one chunk")]
    EmptyBundle,

    #[error("duplicate name {0:?}")]
    DuplicateName(String),

    #[error("unresolved reference {0:?}")]
    UnresolvedReference(String),

    #[error("{0:?} is a role and cannot be used as a filler")]
    RoleAsFiller(String),

    #[error("{0:?} is not a role")]
    NotARole(String),

    #[error("sentence {0:?} has no role/filler pairs")]
    EmptySentence(String),

    #[error("{construction} construction is not supported by the {model} model")]
    UnsupportedConstruction {
        construction: &'static str,
        model: &'static str,
    },

    #[error("answer profile exceeds memory: p_{k} = {p} > |S_{k}| = {count}")]
    ProfileViolation { k: usize, p: u64, count: u64 },

    #[error("memory profile has no atoms (|S_1| = 0)")]
    NoAtoms,
}
