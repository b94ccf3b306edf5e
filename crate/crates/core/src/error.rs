use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown field `{0}` (expected Q or F<prime>)")]
    BadField(String),
    #[error("incompatible shapes: {0}")]
    IncompatibleShapes(String),
    #[error("cycle detected through `{0}`")]
    CycleDetected(String),
    #[error("cover ({0}, {1}) is implied by other covers")]
    RedundantCover(String, String),
    #[error("duplicate or reflexive element `{0}`")]
    BadElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown cell `{0}`")]
    UnknownCell(String),
    #[error("not a simplicial complex: {0}")]
    NotSimplicial(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid sheaf: {0}")]
    InvalidSheaf(String),
    #[error("not a chain complex: {0}")]
    NotComplex(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("squares do not commute: {0}")]
    NotCommuting(String),
    #[error("double complex does not anticommute after the sign twist: {0}")]
    NotAnticommuting(String),
    #[error("not a path complex: {0}")]
    NotPathComplex(String),
    #[error("map is not injective: {0}")]
    NotInjective(String),
    #[error("inconsistent capacity: {0}")]
    InconsistentCapacity(String),
    #[error("not a routing sheaf: {0}")]
    NotRouting(String),
    #[error("not manifold data: {0}")]
    NotManifoldData(String),
    #[error("compact pushforward needs a cellular map")]
    NeedsCellularMap,
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
