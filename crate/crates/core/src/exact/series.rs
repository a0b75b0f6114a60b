//! Power series in the coupling truncated at a fixed order.
//!
//! A `TruncatedSeries` of order `K` stores exactly `K+1` rational
//! coefficients. Binary operations require equal orders; silently mixing
//! orders would corrupt the order bookkeeping downstream, so it is an error.

use num_traits::Zero;

use super::float::{BigFloat, CBigFloat};
use super::poly::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Power series `sum_j c_j λ^j`, carried to a fixed truncation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series from coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least the constant term");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::from_integer(1.into()), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> &Rational {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    /// Cauchy product with every term above the common order discarded.
    pub fn mul_truncated(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Ok(Self { coeffs })
    }

    /// Exact value at a rational coupling (Horner).
    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Value at a complex coupling: exact Gaussian-rational Horner on the
    /// dyadic value of `x`, then one rounding per component.
    pub fn eval_complex(&self, x: &CBigFloat, prec: u32) -> CBigFloat {
        self.as_polynomial().eval_complex(x, prec)
    }

    /// Exact value at a real dyadic coupling, rounded once.
    pub fn eval_bigfloat(&self, x: &BigFloat, prec: u32) -> BigFloat {
        let exact = self.eval_rational(&x.to_rational());
        BigFloat::from_rational(&exact, prec)
    }

    /// The same coefficients as a polynomial (trailing zeros trimmed).
    pub fn as_polynomial(&self) -> Polynomial {
        Polynomial::new(self.coeffs.clone())
    }
}
