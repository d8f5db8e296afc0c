//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by the numerical kernels and problem constructors.
#[derive(Debug, Error)]
pub enum QError {
    /// A constructor or operation received a parameter outside its domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// q-gamma evaluated at (a window around) a nonpositive integer.
    #[error("q-gamma pole at x = {0}")]
    GammaPole(f64),

    /// The denominator product of a real-exponent q-shifted factorial vanishes.
    #[error("q-shifted factorial singular: denominator factor vanishes (z = {z}, nu = {nu})")]
    PochhammerSingular { z: f64, nu: f64 },

    /// A series or product failed to converge within the iteration cap.
    #[error("non-convergent evaluation: {0}")]
    NonConvergent(String),

    /// An operation required a q-regular-at-zero function but none was supplied.
    #[error("function has no zero limit: {0}")]
    NoZeroLimit(String),

    /// A sampled function could not be evaluated at some lattice point.
    #[error("evaluation failed at lattice index {index} (x = {x}): {reason}")]
    Evaluation { index: usize, x: f64, reason: String },

    /// The summand of a fractional-integral series does not decay geometrically.
    #[error("summand of fractional integral does not decay at point index {0}")]
    NonDecayingSummand(usize),

    /// The boundary-condition determinant of the integral-equation
    /// reformulation is numerically singular.
    #[error("singular boundary determinant Delta = {0}")]
    SingularDelta(f64),

    /// A bound constant was requested outside its validity range.
    #[error("constant out of range: {0}")]
    OutOfRange(String),

    /// Picard iteration hit the iteration cap before meeting the tolerance.
    #[error("Picard iteration did not converge in {iterations} iterations (last step {last_step:e})")]
    MaxIterations { iterations: usize, last_step: f64 },

    /// Picard iterates blew up.
    #[error("Picard iteration diverged: iterate norm {norm:e} after {iterations} iterations")]
    Divergence { norm: f64, iterations: usize },
}

pub type Result<T> = std::result::Result<T, QError>;
