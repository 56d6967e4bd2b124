use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not an interior point")]
    NotInteriorPoint,
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("polytope is not Gorenstein")]
    NotGorenstein,
    #[error("simplex is not special")]
    NotSpecial,
    #[error("nef-partition is not centered")]
    NotCentered,
    #[error("not a nef-partition")]
    NotNef,
    #[error("enumeration cap of {cap} candidate points exceeded")]
    EnumerationCap { cap: u64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid block structure: {0}")]
    InvalidBlocks(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// True for resource-limit failures, as opposed to precondition failures.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::EnumerationCap { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Upper bound on the number of candidate points an enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cap(pub u64);

impl Default for Cap {
    fn default() -> Self {
        Cap(10_000_000)
    }
}
