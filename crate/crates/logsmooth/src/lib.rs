//! Numeric and symbolic toolkit for smoothness spaces with logarithmic indices
//! on the 1-D torus.
//!
//! The crate has three layers:
//!
//! * exact parameter handling and a rule-based embedding decision engine
//!   ([`params`], [`embed`]),
//! * several independent norm routes for sampled periodic signals and for
//!   coefficient-level data: Fourier-side ([`dyadic`]), modulus-of-smoothness
//!   ([`moduli`]), Haar sequence norms ([`haar`]), closed forms for lacunary
//!   and general-monotone series ([`closed_forms`]) and rearrangement-invariant
//!   norms ([`rearrange`]),
//! * sharpness machinery: symbolic weighted-Hardy criteria over the power-log
//!   weight family and numeric divergence demonstrations ([`sharpness`]).
//!
//! All parameter decisions use exact rational arithmetic; floating point
//! enters only when a norm is actually evaluated. Every norm route reports a
//! per-scale breakdown ([`report::NormReport`]) so equivalence of routes can
//! be tested without recomputation.

pub use num_complex::Complex64;

pub mod closed_forms;
pub mod corpus;
pub mod dyadic;
pub mod embed;
pub mod exec;
pub mod haar;
pub mod moduli;
pub mod params;
pub mod rearrange;
pub mod report;
pub mod sharpness;
pub mod suites;
pub mod sums;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input text (space strings, CSV files, config files).
    #[error("parse error: {0}")]
    Parse(String),
    /// Structurally valid parameters that violate an operation's precondition.
    #[error("invalid parameters: {0}")]
    InvalidParam(String),
    /// Signal lengths (or grid sizes) that do not match.
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    /// Grid sizes must be powers of two.
    #[error("grid size {0} is not a power of two (>= 8)")]
    NotPowerOfTwo(usize),
    /// Coefficient data whose frequencies do not fit the requested grid.
    #[error("frequency {freq} does not fit below the Nyquist frequency {nyquist}")]
    FrequencyOverflow { freq: usize, nyquist: usize },
    /// Witness exponent outside the interval that makes the construction work.
    #[error("witness exponent outside the valid open interval: {0}")]
    WitnessInterval(String),
    /// Weight families outside the power-log closure of the symbolic layer.
    #[error("weights outside the power-log family: {0}")]
    OutsideClosure(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
