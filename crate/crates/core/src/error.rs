use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("map is singular (zero determinant)")]
    SingularMap,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("topology {tid} has kind {actual}, expected {expected}")]
    InvalidKind {
        tid: u8,
        actual: &'static str,
        expected: &'static str,
    },
    #[error("invalid params: {0}")]
    InvalidParams(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("region is not in canonical cone form: {0}")]
    NotCanonical(String),
}
