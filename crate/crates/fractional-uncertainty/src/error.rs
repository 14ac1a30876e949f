//! Error type shared by every module of the crate.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building functions, evaluating forms,
/// or running the verification harness.
#[derive(Debug, Error)]
pub enum Error {
    /// The form order `s` must lie strictly inside (0, 1/2).
    #[error("form parameter s = {0} is outside the open interval (0, 1/2)")]
    ParameterOutOfRange(f64),

    /// A kernel exponent hit a regime where the integral is infinite.
    #[error("divergent integral: exponent {exponent} in the {case} case")]
    DivergentIntegral { exponent: f64, case: &'static str },

    /// The Euclidean antiderivative denominators vanish as s approaches 1/2.
    #[error("s = {0} is within 1e-6 of 1/2; antiderivative denominators degenerate")]
    DegenerateExponent(f64),

    /// Dyadic distances are only defined to the right of the grid origin.
    #[error("point {point} is not strictly to the right of the grid origin {origin}")]
    PointBelowOrigin { point: f64, origin: f64 },

    /// A value could not be represented as a non-negative dyadic rational.
    #[error("{0} is not a finite non-negative dyadic rational")]
    NotDyadic(f64),

    /// Exact scaled-integer arithmetic would overflow 128 bits.
    #[error("{value} cannot be handled exactly at resolution level {resolution}")]
    ResolutionOverflow { value: f64, resolution: i32 },

    /// A ball radius fell below the grid resolution.
    #[error("radius {0} is below the grid resolution; no dyadic cell is that small")]
    RadiusBelowResolution(f64),

    /// Step functions require strictly increasing cell offsets.
    #[error("duplicate cell offset {0} in step function")]
    DuplicateCell(u64),

    /// Cell values and coefficients must be finite.
    #[error("non-finite value {0} in function data")]
    NonFiniteValue(f64),

    /// Refining a step function would create too many cells.
    #[error("refinement needs {needed} cells, over the budget of {budget}")]
    RefinementBudget { needed: u128, budget: u64 },

    /// The uncertainty product is undefined for the zero expansion.
    #[error("expansion has no nonzero coefficients")]
    ZeroExpansion,

    /// A functional that divides by the norm was handed the zero function.
    #[error("operation undefined for the zero function")]
    ZeroFunction,

    /// The Euclidean uncertainty report requires a unit-norm input.
    #[error("input has L2 norm {0}, not 1 within 1e-10; normalize first")]
    NotNormalized(f64),

    /// The witness mass parameter must be a genuine proportion.
    #[error("epsilon = {0} is outside the open interval (0, 1)")]
    EpsilonOutOfRange(f64),

    /// Adaptive quadrature ran out of subdivisions before reaching the tolerance.
    #[error("quadrature stalled at error {achieved:e} after {panels} panels (requested {requested:e})")]
    QuadratureBudget {
        panels: usize,
        achieved: f64,
        requested: f64,
    },

    /// A configuration value (ranges, trial counts, sample sizes) is unusable.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// The requested evaluation method cannot run on the given representation.
    #[error("method '{method}' requires {needs}")]
    MethodMismatch {
        method: &'static str,
        needs: &'static str,
    },

    /// Report CSV that does not follow the documented schema.
    #[error("CSV parse error on line {line}: {message}")]
    CsvParse { line: usize, message: String },

    /// Input files that are not valid JSON for a function or expansion.
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    /// File system trouble while reading inputs or writing reports.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
