//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Arithmetic between truncated series of different orders.
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    /// A zero polynomial where a nonzero one is required.
    #[error("zero polynomial input")]
    ZeroPolynomial,

    /// Unparsable rational literal.
    #[error("malformed rational string {input:?}")]
    BadRational { input: String },

    /// Invalid model construction input.
    #[error("invalid model: {0}")]
    BadModel(String),

    /// Equal unperturbed eigenvalues; the nondegenerate recursion breaks down.
    #[error("degenerate unperturbed spectrum: diag0[{a}] = diag0[{b}]")]
    Degenerate { a: usize, b: usize },

    /// Matrix too small to carry the requested series order exactly.
    #[error("matrix dimension {actual} too small, need at least {required}")]
    DimensionTooSmall { required: usize, actual: usize },

    /// State index outside the model.
    #[error("state index {state} out of range for dimension {dim}")]
    StateOutOfRange { state: usize, dim: usize },

    /// The same state listed twice in a model-space selection.
    #[error("duplicate state index {state}")]
    DuplicateState { state: usize },

    /// Root finder did not reach the convergence tolerance.
    #[error("root finder did not converge in {iterations} iterations (max residual {max_residual:e})")]
    NonConvergence { iterations: usize, max_residual: f64 },

    /// The discriminant has no lambda-dependence, hence no finite root.
    #[error("no exceptional point at order {order}: discriminant is constant")]
    NoExceptionalPoint { order: usize },

    /// Every root fell below the exclusion threshold.
    #[error("all roots excluded by modulus threshold {threshold:e}")]
    AllRootsExcluded { threshold: f64 },

    /// Eigenvalues of the truncated matrix still drift when the dimension grows.
    #[error("oracle eigenvalues not converged in matrix dimension: drift {drift:e} at dim {dim}")]
    OracleNotConverged { dim: usize, drift: f64 },

    /// Too little series data for a radius-of-convergence fit.
    #[error("radius estimate needs more series data: {0}")]
    InsufficientSeries(String),
}
