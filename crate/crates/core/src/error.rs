use thiserror::Error;

use crate::polygon::PolygonError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("profile has no Hodge table")]
    MissingHodgeData,
    #[error("domino numbers are unknown")]
    DominoesUnknown,
    #[error("hypothesis not satisfied: {0}")]
    HypothesisNotSatisfied(String),
    #[error("row entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: String },
    #[error("row entry {index} is not an integer ({value})")]
    NonIntegralEntry { index: usize, value: String },
    #[error("parameter out of range: {0}")]
    ParameterRange(String),
    #[error("unknown catalog id `{id}`{}", suggestion.as_ref().map(|s| format!(" (did you mean `{s}`?)")).unwrap_or_default())]
    UnknownCatalogId { id: String, suggestion: Option<String> },
    #[error(transparent)]
    Polygon(Box<PolygonError>),
}

impl From<PolygonError> for Error {
    fn from(e: PolygonError) -> Self {
        Error::Polygon(Box::new(e))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
