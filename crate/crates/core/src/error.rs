use num_complex::Complex64;
use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A series failed validation. Every violated constraint is listed.
    #[error("invalid series: {}", .0.join("; "))]
    InvalidSeries(Vec<String>),

    /// A parameter tuple failed validation. Every violated constraint is listed.
    #[error("invalid parameters: {}", .0.join("; "))]
    InvalidParams(Vec<String>),

    #[error("valence mismatch: {left} != {right}")]
    ValenceMismatch { left: u32, right: u32 },

    /// The denominator of a ratio is too small at this sample point.
    #[error("denominator {magnitude:e} below threshold at z = {z}")]
    NearZeroDenominator { z: Complex64, magnitude: f64 },

    #[error("quadrature did not converge: refinement error {error:e} with {nodes} nodes")]
    QuadratureNotConverged { error: f64, nodes: usize },

    #[error("proximity level {rho} is outside [0, 1): {reason}")]
    InvalidRho { rho: f64, reason: String },

    #[error("not a member of the class: lhs {lhs} > rhs {rhs}")]
    NotAMember { lhs: f64, rhs: f64 },

    /// A file could not be read or parsed.
    #[error("{path}: {message}")]
    Io { path: String, message: String },

    /// An argument outside the domain of an operation.
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
