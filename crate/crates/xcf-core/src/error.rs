//! Error type shared by the geometry, initial-data, and flow modules.

use thiserror::Error;

/// Errors raised by grid construction, curvature evaluation, and time stepping.
///
/// Numeric payloads are reported as `f64` regardless of the working scalar.
#[derive(Debug, Clone, Error)]
pub enum XcfError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("grid too coarse: n = {n}, need at least {min} cells")]
    GridTooCoarse { n: usize, min: usize },

    #[error("non-finite or degenerate value in {field} at cell {index}")]
    NonFinite { field: &'static str, index: usize },

    #[error("boundary data infeasible: 2*pi*s0 = {twopi_s0} must be smaller than ell1 = {ell1}")]
    Infeasible { twopi_s0: f64, ell1: f64 },

    #[error("constructed metric is not negatively curved: {which} = {value} at {location}")]
    CurvatureSignViolation {
        which: &'static str,
        value: f64,
        location: String,
    },

    #[error("positivity lost in {field} at cell {index} (value {value}) at t = {t}")]
    PositivityLost {
        field: &'static str,
        index: usize,
        value: f64,
        t: f64,
    },

    #[error("ellipticity lost: min alpha = {min_alpha} <= floor {floor} at t = {t}")]
    EllipticityLost {
        min_alpha: f64,
        floor: f64,
        t: f64,
    },

    #[error("step budget exhausted: {max_steps} steps reached at t = {t} before t_end = {t_end}")]
    MaxStepsExceeded { max_steps: u64, t: f64, t_end: f64 },

    #[error("invalid flow configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, XcfError>;
