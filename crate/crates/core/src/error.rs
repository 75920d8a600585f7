//! Error type shared across the simulation modules.

use crate::frames::Frame;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input value violates a documented precondition or invariant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A state vector was supplied in the wrong reference frame.
    #[error("frame mismatch: expected {expected:?}, got {found:?}")]
    FrameMismatch { expected: Frame, found: Frame },

    /// A satellite state lies at or below the Earth surface.
    #[error("state inside the Earth: |r| = {radius_m} m")]
    BelowSurface { radius_m: f64 },

    /// The UE is not served by (or cannot see) the requested satellite.
    #[error("out of coverage: {0}")]
    OutOfCoverage(String),

    /// A text record (elements file, profile file, config) failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
