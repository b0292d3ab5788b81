use thiserror::Error;

/// Errors raised by the search, query and assembly routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid database size {0}: at least 2 items are required")]
    InvalidSize(usize),
    #[error("target index {target} out of range for database of size {size}")]
    InvalidTarget { target: usize, size: usize },
    #[error("dimension mismatch: state has {state} amplitudes, search expects {expected}")]
    DimensionMismatch { state: usize, expected: usize },
    #[error("state is not normalized: squared norm {0} differs from 1 by more than 1e-12")]
    Normalization(f64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
