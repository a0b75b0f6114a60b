//! Exact univariate polynomials over the rationals, plus the bivariate
//! layer needed for secular determinants: polynomials in the eigenvalue
//! variable `W` whose coefficients are polynomials in the coupling `λ`.
//!
//! The canonical zero polynomial is the empty coefficient list, and trailing
//! zero coefficients are always trimmed, so structural equality is value
//! equality.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::float::{BigFloat, CBigFloat};
use super::rational::{format_rational, CRational, Rational};
use crate::error::{Error, Result};

/// Polynomial in one variable, coefficient index = power.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    /// Builds a polynomial, trimming trailing zeros to the canonical form.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c · λ^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `λ^j` (zero beyond the stored degree).
    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
            coeffs.push(a + b);
        }
        Self::new(coeffs)
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    /// Exact full product (no truncation).
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::new(coeffs)
    }

    /// Drops every term of degree above `max_degree`.
    pub fn truncated(&self, max_degree: usize) -> Self {
        Self::new(self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
            .collect();
        Self::new(coeffs)
    }

    /// Exact quotient; panics if the division leaves a remainder.
    /// Fraction-free elimination guarantees divisibility where this is used.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading_coeff().unwrap();
        let mut rem = self.coeffs.clone();
        let nd = self.degree().unwrap();
        assert!(nd >= dd, "polynomial division with remainder: degree too low");
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / lead;
            if !q.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    let delta = d * &q;
                    rem[k + i] -= delta;
                }
            }
            quot[k] = q;
        }
        assert!(rem.iter().all(Rational::is_zero), "polynomial division left a remainder");
        Self::new(quot)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact Gaussian-rational Horner.
    pub fn eval_crational(&self, z: &CRational) -> CRational {
        let mut acc = CRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z);
            acc.re += c;
        }
        acc
    }

    /// Exact evaluation at the dyadic value of `z`, then one rounding per
    /// component.
    pub fn eval_complex(&self, z: &CBigFloat, prec: u32) -> CBigFloat {
        let exact = self.eval_crational(&z.to_crational());
        CBigFloat::from_crational(&exact, prec)
    }

    /// Exact evaluation at a real dyadic point, then one rounding.
    pub fn eval_bigfloat(&self, x: &BigFloat, prec: u32) -> BigFloat {
        let exact = self.eval_rational(&x.to_rational());
        BigFloat::from_rational(&exact, prec)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_str = format_rational(&mag);
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{coeff_str}")?,
                (1, true) => write!(f, "λ")?,
                (1, false) => write!(f, "({coeff_str})λ")?,
                (_, true) => write!(f, "λ^{k}")?,
                (_, false) => write!(f, "({coeff_str})λ^{k}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial in the eigenvalue variable `W` with `λ`-polynomial
/// coefficients; index = power of `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WPoly {
    coeffs: Vec<Polynomial>,
}

impl WPoly {
    pub fn new(mut coeffs: Vec<Polynomial>) -> Self {
        while coeffs.last().is_some_and(Polynomial::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Polynomial> {
        self.coeffs.last()
    }

    /// d/dW
    pub fn derivative_w(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::new(Vec::new());
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Rational::from_integer(BigInt::from(k))))
            .collect();
        Self::new(coeffs)
    }
}

/// Resultant of two `W`-polynomials with respect to `W`: the determinant of
/// their Sylvester matrix over `ℚ[λ]`, computed by fraction-free (Bareiss)
/// elimination so every intermediate entry stays an exact polynomial.
pub fn poly_resultant(f: &WPoly, g: &WPoly) -> Result<Polynomial> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let m = f.degree().unwrap();
    let n = g.degree().unwrap();
    if m == 0 {
        // Res(c, g) = c^n ; both constant gives the empty determinant, 1
        return Ok(poly_pow(f.leading_coeff().unwrap(), n));
    }
    if n == 0 {
        return Ok(poly_pow(g.leading_coeff().unwrap(), m));
    }
    let size = m + n;
    let mut mat = vec![vec![Polynomial::zero(); size]; size];
    for (r, row) in mat.iter_mut().take(n).enumerate() {
        for i in 0..=m {
            row[r + i] = f.coeffs[m - i].clone();
        }
    }
    for (r, row) in mat.iter_mut().skip(n).enumerate() {
        for i in 0..=n {
            row[r + i] = g.coeffs[n - i].clone();
        }
    }
    Ok(bareiss_determinant(mat))
}

fn poly_pow(base: &Polynomial, k: usize) -> Polynomial {
    let mut acc = Polynomial::one();
    for _ in 0..k {
        acc = acc.mul(base);
    }
    acc
}

/// Fraction-free determinant over `ℚ[λ]`.
fn bareiss_determinant(mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one();
    }
    let mut sign_flip = false;
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Polynomial::zero();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            let mik = m[i][k].clone();
            for j in k + 1..n {
                let num = m[i][j].mul(&pivot).sub(&mik.mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev);
            }
            m[i][k] = Polynomial::zero();
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// Discriminant of `f` with respect to `W`:
/// `(-1)^(N(N-1)/2) · Res(f, ∂f/∂W) / lc(f)`.
pub fn poly_discriminant(f: &WPoly) -> Result<Polynomial> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::ZeroPolynomial);
    }
    if n == 1 {
        return Ok(Polynomial::one());
    }
    let res = poly_resultant(f, &f.derivative_w())?;
    let signed = if (n * (n - 1) / 2) % 2 == 1 { res.neg() } else { res };
    Ok(signed.div_exact(f.leading_coeff().unwrap()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_int};

    fn poly(cs: &[(i64, i64)]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn canonical_zero_is_empty() {
        let p = Polynomial::new(vec![rat_int(0), rat_int(0)]);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
        assert_eq!(p, Polynomial::zero());
    }

    #[test]
    fn trims_trailing_zeros() {
        let p = Polynomial::new(vec![rat_int(1), rat_int(2), rat_int(0)]);
        assert_eq!(p.degree(), Some(1));
    }

    #[test]
    fn product_and_exact_division_roundtrip() {
        let a = poly(&[(1, 2), (0, 1), (3, 1)]);
        let b = poly(&[(-4, 3), (1, 1)]);
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&a), b);
        assert_eq!(ab.div_exact(&b), a);
    }

    #[test]
    fn derivative_and_truncation() {
        let p = poly(&[(5, 1), (-2, 1), (0, 1), (7, 2)]);
        assert_eq!(p.derivative(), poly(&[(-2, 1), (0, 1), (21, 2)]));
        assert_eq!(p.truncated(1), poly(&[(5, 1), (-2, 1)]));
        assert_eq!(Polynomial::zero().derivative(), Polynomial::zero());
    }

    #[test]
    fn resultant_quadratic_closed_form() {
        // f = W² + p₁W + p₂, g = ∂f/∂W = 2W + p₁ → Res = -(p₁² - 4p₂)
        let p1 = poly(&[(-10, 1), (-1, 1), (1, 16)]);
        let p2 = poly(&[(9, 1), (9, 1), (-17, 16)]);
        let f = WPoly::new(vec![p2.clone(), p1.clone(), Polynomial::one()]);
        let res = poly_resultant(&f, &f.derivative_w()).unwrap();
        let closed = p1.mul(&p1).sub(&p2.scale(&rat_int(4)));
        assert_eq!(res, closed.neg());
        // and the conventional discriminant flips the sign back
        assert_eq!(poly_discriminant(&f).unwrap(), closed);
    }

    #[test]
    fn distinct_roots_give_positive_discriminant() {
        // (W-1)(W-9) = W² - 10W + 9, f' = 2W - 10 → discriminant 64
        let f = WPoly::new(vec![poly(&[(9, 1)]), poly(&[(-10, 1)]), Polynomial::one()]);
        assert_eq!(poly_discriminant(&f).unwrap(), Polynomial::constant(rat_int(64)));
        assert_eq!(
            poly_resultant(&f, &f.derivative_w()).unwrap(),
            Polynomial::constant(rat_int(-64))
        );
    }

    #[test]
    fn double_root_discriminant_vanishes() {
        // (W - c)² with c = 1 + λ
        let c = poly(&[(1, 1), (1, 1)]);
        let f = WPoly::new(vec![c.mul(&c), c.scale(&rat_int(-2)), Polynomial::one()]);
        assert!(poly_discriminant(&f).unwrap().is_zero());
    }

    #[test]
    fn zero_input_rejected() {
        let f = WPoly::new(vec![Polynomial::one()]);
        let z = WPoly::new(Vec::new());
        assert!(matches!(poly_resultant(&z, &f), Err(Error::ZeroPolynomial)));
        assert!(matches!(poly_resultant(&f, &z), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn gaussian_evaluation_matches_componentwise() {
        let p = poly(&[(1, 1), (0, 1), (1, 1)]); // 1 + λ²
        let z = CRational::new(rat_int(0), rat_int(1)); // i
        assert!(p.eval_crational(&z).is_zero()); // i² + 1 = 0
    }

    #[test]
    fn display_is_readable() {
        let p = poly(&[(-10, 1), (-1, 1), (1, 16)]);
        assert_eq!(p.to_string(), "-10 - λ + (1/16)λ^2");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(poly(&[(0, 1), (1, 1)]).to_string(), "λ");
    }
}
