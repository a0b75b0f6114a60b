//! Exact perturbation-series resummation through the effective secular
//! equation, and exceptional-point location for banded eigenproblems.
//!
//! Given `H = H₀ + λ·H_I` with a diagonal nondegenerate `H₀` and a banded
//! perturbation, the crate
//!
//! 1. generates the Rayleigh–Schrödinger eigenvalue series of selected
//!    states with exact rational coefficients ([`rspt`]),
//! 2. resums `N` of those series into the monic secular polynomial
//!    `W^N + Σ p_j(λ) W^(N-j)`, truncating every product at the series
//!    order ([`ese`]),
//! 3. takes its exact `λ`-discriminant and finds the discriminant root of
//!    smallest modulus ([`roots`]), which is where two eigenvalue branches
//!    coalesce: the exceptional point that sets the radius of convergence
//!    of the series ([`ep`]).
//!
//! Built-in models cover the four symmetry subspaces of the Mathieu
//! operator `-d²/dx² + 2λ·cos(2x)`; arbitrary banded models with rational
//! entries are accepted as well ([`model`]).
//!
//! All series and polynomial algebra is exact. Floating point enters only
//! at the root-finding stage, at a configurable precision (default 128
//! bits), and every polynomial evaluation there is performed exactly and
//! rounded once, so root residuals are trustworthy down to the working
//! precision.

pub mod ep;
pub mod ese;
pub mod error;
pub mod exact;
pub mod model;
pub mod roots;
pub mod rspt;

pub use ep::{
    ep_table, estimate_radius, locate_ep, model_space_series, oracle_eigenvalues, EpRow,
    ExceptionalPointEstimate, RadiusEstimate, DEFAULT_COALESCENCE_GAP, EXCLUDE_ZERO_TOLERANCE,
    MATHIEU_2PI_EVEN_EP_MODULUS,
};
pub use ese::{build_ese, ese_discriminant, ese_roots_in_w, EsePolynomial, TruncationMode};
pub use error::{Error, Result};
pub use exact::{
    decimal_digits, format_rational, parse_rational, poly_discriminant, poly_resultant, BigFloat,
    CBigFloat, CRational, Polynomial, Rational, TruncatedSeries, WPoly,
};
pub use model::{build_generic, build_mathieu, BandedOperator, MathieuSubspace, ModelSpec};
pub use roots::{
    find_roots, find_roots_complex, find_roots_seeded, smallest_modulus_roots, RootSet,
    DEFAULT_MAX_ITERATIONS, DEFAULT_SEED,
};
pub use rspt::{minimal_dim, rs_series, EigenSeries};

/// Default working precision in bits for root finding and evaluations.
pub const DEFAULT_PRECISION_BITS: u32 = 128;
