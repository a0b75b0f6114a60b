//! Exact arithmetic substrate: rationals, truncated power series,
//! polynomials, and arbitrary-precision floats for the final roundings.

pub mod float;
pub mod poly;
pub mod rational;
pub mod series;

pub use float::{decimal_digits, BigFloat, CBigFloat};
pub use poly::{poly_discriminant, poly_resultant, Polynomial, WPoly};
pub use rational::{format_rational, parse_rational, rat, rat_int, CRational, Rational};
pub use series::TruncatedSeries;
