use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix entry magnitude {magnitude:e} exceeds exponential limit {limit:e}")]
    ExponentialOverflow { magnitude: f64, limit: f64 },

    #[error("vector is not unit length (norm {norm})")]
    NotUnit { norm: f64 },

    #[error("directions coincide, difference vector is undefined")]
    CoincidentDirections,

    #[error("order parameter is not a phase times a real vector (|Δ×Δ*| = {cross:e})")]
    NotUnitaryOrderParameter { cross: f64 },

    #[error("single-particle energy is zero, claimed field diagonal form is singular")]
    FermiSurfaceSingularity,

    #[error("invalid model parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("critical temperature below resolvable limit {limit:e}")]
    CriticalTemperatureUnresolved { limit: f64 },

    #[error("sample set invalid: {0}")]
    InvalidSamples(String),
}

pub type Result<T> = std::result::Result<T, Error>;
