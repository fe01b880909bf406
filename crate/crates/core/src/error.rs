use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("basis index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    /// `de^k` may only mention covectors that come strictly before `e^k`.
    #[error("de^{entry} references e^{index}; only indices below {entry} are allowed")]
    Filtration { entry: usize, index: usize },

    #[error("expected a {expected}-form, found degree {found}")]
    Degree { expected: usize, found: usize },

    #[error("a presentation needs at least one basis vector")]
    EmptyPresentation,

    #[error("unsupported root-system series {0}")]
    UnsupportedSeries(String),

    #[error("invalid flag specification: {0}")]
    InvalidFlag(String),

    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),

    #[error("triple is not admissible: {0}")]
    NotAdmissible(String),

    #[error("parameter constraint violated: {0}")]
    Constraint(String),

    #[error("matrix does not square to minus the identity")]
    NotComplexStructure,

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
}
