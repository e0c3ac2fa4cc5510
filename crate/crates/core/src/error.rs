use thiserror::Error;

use crate::state::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid axially symmetric state: {0}")]
    InvalidState(ValidationReport),
    #[error("spectrum does not sum to one (sum = {sum})")]
    InvalidSpectrum { sum: f64 },
    #[error("matrix is not Hermitian (max |A - A^H| = {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("not a density matrix: {reason}")]
    NotDensityMatrix { reason: String },
    #[error("temperature must be positive, got {0}")]
    NonpositiveTemperature(f64),
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
    #[error("invalid parameter input: {0}")]
    Parse(String),
    #[error("write failed: {0}")]
    Sink(#[from] std::io::Error),
}
