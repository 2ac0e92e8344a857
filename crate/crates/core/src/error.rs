use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("galois exponent {k} is not coprime to conductor {e}")]
    NotCoprime { k: i64, e: u64 },
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("group not in catalog: {0}")]
    UnknownGroup(String),
    #[error("unknown group element label `{0}`")]
    UnknownElement(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("value not in ring: {0}")]
    NotInRing(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("lattice is not contained in the reference lattice")]
    NotContained,
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("element is not central")]
    NotCentral,
    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),
    #[error("witnesses do not generate the target: {0}")]
    InsufficientWitnesses(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable snake_case tag used in error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotCoprime { .. } => "not_coprime",
            Error::UnsupportedField(_) => "unsupported_field",
            Error::UnknownGroup(_) => "unknown_group",
            Error::UnknownElement(_) => "unknown_element",
            Error::RingMismatch(_) => "ring_mismatch",
            Error::NotInRing(_) => "not_in_ring",
            Error::Dimension(_) => "dimension",
            Error::NotContained => "not_contained",
            Error::RankMismatch { .. } => "rank_mismatch",
            Error::NotCentral => "not_central",
            Error::NotInvertible(_) => "not_invertible",
            Error::InsufficientWitnesses(_) => "insufficient_witnesses",
            Error::Schema(_) => "schema",
            Error::Invalid(_) => "invalid",
        }
    }
}
