use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("monomials live over different variable tables ({left} vs {right} variables)")]
    VariableMismatch { left: usize, right: usize },

    #[error("invalid variable table: {0}")]
    InvalidVariables(String),

    #[error("empty generator list")]
    EmptyGenerators,

    #[error("the zero ideal is not accepted")]
    ZeroIdeal,

    #[error("the unit ideal is not accepted")]
    UnitIdeal,

    #[error("power must be at least 1 (got {0})")]
    InvalidPower(u32),

    #[error("generator {0} is not square-free")]
    NotSquareFree(String),

    #[error("vertex {0} is not in the complex")]
    VertexAbsent(u32),

    #[error("vertex id {0} exceeds the supported maximum of 127")]
    VertexOutOfRange(u32),

    #[error("operation requires a nonempty complex")]
    EmptyComplex,

    #[error("{what} exceeds the limit of {limit} (raise it with {flag})")]
    ResourceLimit {
        what: String,
        limit: usize,
        flag: &'static str,
    },

    #[error("labels do not match the minimal generators: {0}")]
    LabelMismatch(String),

    #[error("complex is not a quasi-forest; the connectivity criterion does not apply")]
    NotQuasiForest,

    #[error("complex does not support a resolution: witness multidegree {witness}{}",
        degree.map(|d| format!(" (reduced homology in dimension {d})")).unwrap_or_default())]
    Unsupported {
        witness: String,
        degree: Option<usize>,
    },

    #[error(
        "invalid field specification {0:?} (expected \"rational\", \"gf2\" or \"gf:<prime>\")"
    )]
    InvalidField(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}
