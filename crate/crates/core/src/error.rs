use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid spec: {0}")]
    SpecInvalid(String),
    #[error("cap exceeded: {what} needs {size}, cap is {cap}")]
    CapExceeded { what: String, size: u128, cap: u128 },
    #[error("closure produced {got} elements, expected {expected}")]
    ClosureMismatch { expected: usize, got: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not cyclic")]
    NotCyclic,
    #[error("eigen-angle {angle} is not a multiple of 2pi/{order}")]
    AngleNotCommensurate { angle: f64, order: usize },
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("relation violated: {0}")]
    RelationViolated(String),
    #[error("no standard factorization: {0}")]
    NoFactorization(String),
    #[error("unregistered family: {0}")]
    UnregisteredFamily(String),
    #[error("outer class decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("table degree violates congruences: {0}")]
    Inconsistent(String),
    #[error("inconsistent congruence system: {0}")]
    InconsistentSystem(String),
    #[error("degree underdetermined: {0}")]
    Underdetermined(String),
    #[error("unknown table: {0}")]
    UnknownTable(String),
    #[error("ambiguous classification: {0}")]
    Ambiguous(String),
    #[error("expression error: {0}")]
    Expr(String),
    #[error("unresolved embedding: {0}")]
    EmbeddingUnresolved(String),
}

pub type Result<T> = std::result::Result<T, Error>;
