use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate point id `{0}`")]
    DuplicatePoint(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("set is not open (not upward closed): `{0}` is missing")]
    NotOpen(String),
    #[error("backend mismatch: {0}")]
    BackendMismatch(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid ring homomorphism: {0}")]
    InvalidHom(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid module map: {0}")]
    InvalidMap(String),
    #[error("missing ring at `{0}`")]
    MissingRing(String),
    #[error("missing restriction `{0}` <= `{1}`")]
    MissingRestriction(String, String),
    #[error("restriction at `{0}` is not the identity")]
    IdentityViolated(String),
    #[error("composite restrictions from `{0}` to `{1}` depend on the path")]
    PathDependent(String, String),
    #[error("map is not monotone: `{0}` <= `{1}` but the images are not ordered")]
    NotMonotone(String, String),
    #[error("square does not commute on `{0}` <= `{1}`")]
    NonCommutingSquare(String, String),
    #[error("not a finite space: restriction `{0}` <= `{1}` is not certified flat ({2})")]
    NotFlat(String, String, String),
    #[error("not a finite space: {0}")]
    NotFinite(String),
    #[error("mismatched spaces: {0}")]
    Mismatch(String),
    #[error("degree window required for {0}")]
    WindowRequired(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid document: {0}")]
    Document(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("stale beat point `{0}`")]
    StaleBeatPoint(String),
}

pub type Result<T> = std::result::Result<T, Error>;
