use crate::order::ValidationReport;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("malformed structure: {0}")]
    Structure(String),
    #[error("structure violates its axioms: {0}")]
    Invalid(ValidationReport),
    #[error("size bound exceeded: {what} needs about {needed} candidates, bound is {bound}")]
    Bound { what: String, needed: String, bound: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid element: {0}")]
    Element(String),
    #[error("unknown name: {0}")]
    Unknown(String),
    #[error("no closed form for {0}")]
    NoClosedForm(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("carrier mismatch: {0}")]
    Mismatch(String),
    #[error("invalid path: {0}")]
    Path(String),
    #[error("invalid bimorphism: {0}")]
    Bimorphism(String),
}

pub type Result<T> = std::result::Result<T, Error>;
