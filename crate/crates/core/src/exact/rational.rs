//! Exact rational scalars and Gaussian rationals.
//!
//! The coefficient field for every series and polynomial in this crate is the
//! arbitrary-precision rationals. Values are always stored reduced with a
//! positive denominator, which [`num_rational::BigRational`] guarantees, so
//! equality and serialization are canonical.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational number, always reduced.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q`, or just `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q`, an integer, or a plain decimal such as `-0.125`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::BadRational { input: s.to_string() };
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let (sign, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if !int_digits.is_empty() && !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let whole: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().map_err(|_| bad())?
        };
        let frac: BigInt = frac_part.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let numer = whole * &scale + frac;
        return Ok(Rational::new(BigInt::from(sign) * numer, scale));
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Gaussian rational: complex number with exact rational components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CRational {
    pub re: Rational,
    pub im: Rational,
}

impl CRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn zero() -> Self {
        Self { re: Rational::zero(), im: Rational::zero() }
    }

    pub fn one() -> Self {
        Self { re: Rational::one(), im: Rational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { re: &self.re - &other.re, im: &self.im - &other.im }
    }

    pub fn neg(&self) -> Self {
        Self { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    /// Exact division; panics on a zero divisor.
    pub fn div(&self, other: &Self) -> Self {
        let d = other.norm_sqr();
        assert!(!d.is_zero(), "division by zero Gaussian rational");
        let n = self.mul(&other.conj());
        Self { re: n.re / &d, im: n.im / d }
    }

    /// |z|^2, exactly.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

/// Least common multiple of two positive big integers.
pub(crate) fn lcm_biguint(a: &BigUint, b: &BigUint) -> BigUint {
    num_integer::Integer::lcm(a, b)
}

/// log2 of |r| estimated from bit lengths; `None` for zero.
/// Accurate to within about one bit, which is enough for root bounds.
pub(crate) fn log2_abs(r: &Rational) -> Option<f64> {
    if r.is_zero() {
        return None;
    }
    let nb = r.numer().abs().magnitude().bits() as f64;
    let db = r.denom().magnitude().bits() as f64;
    Some(nb - db)
}
