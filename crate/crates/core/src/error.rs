use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label scale mismatch: L_max index {left} vs {right}")]
    ScaleMismatch { left: u32, right: u32 },

    #[error("invalid label scale: maximal index must be at least 1, got {0}")]
    InvalidScale(u32),

    #[error("label index {index} exceeds scale maximum {max}")]
    LabelOutOfRange { index: u32, max: u32 },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("scalar division of a label by zero")]
    DivisionByZero,

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("unknown atom `{name}` at offset {offset}")]
    UnknownAtom { name: String, offset: usize },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("complement is not available in hyper-power set mode (offset {offset})")]
    ComplementInHyperMode { offset: usize },

    #[error("propositions belong to different models")]
    ModelMismatch,

    #[error("proposition is empty under the model")]
    EmptyProposition,

    #[error("conditioning event is empty under model: the problem is impossible")]
    ImpossibleProblem,

    #[error("too many generator atoms for closure enumeration: {got} > {limit}")]
    Capacity { got: usize, limit: usize },

    #[error("total conflict (K = 1): Dempster's rule is undefined")]
    TotalConflict,

    #[error("invalid mass: {0}")]
    InvalidMass(String),
}
