use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid field spec `{0}` (expected \"Q\" or \"F<p>\" with p prime, p < 2^61)")]
    InvalidField(String),

    #[error("{0} is not invertible in the ground field")]
    NotInvertible(String),

    #[error("polynomials live in different variable contexts")]
    ContextMismatch,

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("operation requires a non-constant polynomial")]
    ConstantPolynomial,

    #[error("operation requires a non-unit polynomial")]
    UnitPolynomial,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("presentation mismatch")]
    PresentationMismatch,

    #[error("relation not preserved; residue {0}")]
    RelationNotPreserved(String),

    #[error("json: {0}")]
    Json(String),

    #[error("internal certificate failure: {0}")]
    Internal(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
