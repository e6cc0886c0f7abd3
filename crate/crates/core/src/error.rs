use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("expected a form of degree {expected}, found a term of degree {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("variable y{index} out of range for {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },

    #[error("zero form is not a valid generator")]
    ZeroForm,

    #[error("forms do not share variables, degree and field")]
    MixedParameters,

    #[error("generators are dependent: span has dimension {rank}, expected {expected}")]
    DependentGenerators { rank: usize, expected: usize },

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("degenerate instance: {0}")]
    Degenerate(String),

    #[error("bad generator subset: {0}")]
    BadSubset(String),

    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
