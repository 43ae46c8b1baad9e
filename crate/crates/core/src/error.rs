use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrices live in different label spaces")]
    LabelMismatch,
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not positive semidefinite")]
    NotPsd,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: loop on vertex {label:?}")]
    Loop { line: usize, label: String },
    #[error("{n} vertices exceed the enumeration gate of {gate}")]
    GateExceeded { n: usize, gate: usize },
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("label {0:?} clashes with the root label")]
    RootClash(String),
    #[error("point is not feasible: {0}")]
    Infeasible(String),
    #[error("spectrahedron has no Slater witness")]
    MissingSlater,
    #[error("stored Slater witness is invalid: {0}")]
    InvalidSlater(String),
    #[error("operation supports equality constraints only")]
    InequalitiesUnsupported,
    #[error("normal cone routes disagree: direct {direct}, formula {formula}")]
    RouteDisagreement { direct: usize, formula: usize },
    #[error("conjugate face dimension mismatch: formula {formula}, span {span}")]
    FaceDimension { formula: usize, span: usize },
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("negative edge weight on {0}")]
    NegativeWeight(String),
    #[error("zero vector")]
    ZeroVector,
    #[error("malformed candidate: {0}")]
    MalformedCandidate(String),
    #[error("{0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
