use thiserror::Error;

use crate::code::NeuronId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("neuron index {0} out of range 1..=128")]
    NeuronOutOfRange(NeuronId),
    #[error("declared neuron count {declared} is smaller than the largest index {max}")]
    DeclaredNeuronsTooSmall { declared: NeuronId, max: NeuronId },
    #[error("nerve input contains an empty set")]
    EmptySet,
    #[error("{0} is not a face of the complex")]
    NotAFace(String),
    #[error("the empty face has no link in this sense")]
    EmptyFace,
    #[error("complex has {0} vertices; expected 1 to 4")]
    ComplexSize(usize),
    #[error("sets do not form an antichain of distinct facets")]
    NotAntichain,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid realization: {0}")]
    InvalidRealization(String),
    #[error("malformed realization document: {0}")]
    Document(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
