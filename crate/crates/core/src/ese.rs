//! The effective secular equation: the monic polynomial in `W` whose
//! coefficients resum a set of truncated eigenvalue series.
//!
//! Expanding `Π_n (W - E_n(λ))` with order-`K` truncated series
//! multiplication (every product cut back to `λ^K`) gives
//! `W^N + Σ_j p_j(λ) W^(N-j)`, where `p_j` is the signed elementary
//! symmetric polynomial of the series. Its `λ`-discriminant vanishes where
//! two `W`-roots coalesce, which is how exceptional points are located.
//!
//! Truncation at order `K` is a ring homomorphism, so the fold order over
//! states cannot change the result, and re-truncation of an expanded
//! product equals truncating intermediates.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{
    poly_discriminant, CBigFloat, CRational, Polynomial, Rational, TruncatedSeries, WPoly,
};
use crate::roots::{self, RootSet};
use crate::rspt::EigenSeries;

/// Whether quantities derived from the secular polynomial are cut back to
/// the series order. The secular product itself is always truncated at `K`;
/// the choice only affects the discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TruncationMode {
    /// Keep the full discriminant (degree up to `N(N-1)K` terms).
    #[default]
    Full,
    /// Additionally remove discriminant terms above `λ^K`.
    TruncateAfter,
}

impl TruncationMode {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Full => "full",
            Self::TruncateAfter => "truncate-after",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "full" => Some(Self::Full),
            "truncate-after" => Some(Self::TruncateAfter),
            _ => None,
        }
    }
}

impl fmt::Display for TruncationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Monic secular polynomial `W^N + Σ_{j=1..N} p_j(λ) W^(N-j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EsePolynomial {
    order: usize,
    /// `p[j-1]` is `p_j`, the coefficient of `W^(N-j)`.
    p: Vec<Polynomial>,
}

impl EsePolynomial {
    /// Series truncation order `K`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Model-space size `N`.
    pub fn n_states(&self) -> usize {
        self.p.len()
    }

    /// `p_j` for `j = 1..=N`.
    pub fn p(&self, j: usize) -> &Polynomial {
        &self.p[j - 1]
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.p
    }

    /// The polynomial in `W`, leading coefficient one.
    pub fn as_w_poly(&self) -> WPoly {
        let mut coeffs: Vec<Polynomial> = self.p.iter().rev().cloned().collect();
        coeffs.push(Polynomial::one());
        WPoly::new(coeffs)
    }
}

/// Expands `Π_n (W - E_n)` with order-`K` truncated multiplication.
pub fn build_ese(series: &[EigenSeries]) -> Result<EsePolynomial> {
    if series.len() < 2 {
        return Err(Error::BadModel(format!(
            "a secular polynomial needs at least 2 states, got {}",
            series.len()
        )));
    }
    let order = series[0].order();
    for s in series.iter().skip(1) {
        if s.order() != order {
            return Err(Error::OrderMismatch { left: order, right: s.order() });
        }
    }
    for (i, a) in series.iter().enumerate() {
        for b in series.iter().skip(i + 1) {
            if a.state() == b.state() {
                return Err(Error::DuplicateState { state: a.state() });
            }
        }
    }

    // fold: coeffs[i] is the series-valued coefficient of W^i
    let mut coeffs: Vec<TruncatedSeries> = vec![TruncatedSeries::one(order)];
    for s in series {
        let neg = s.series().neg();
        let mut next = vec![TruncatedSeries::zero(order); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c)?;
            next[i] = next[i].add(&c.mul_truncated(&neg)?)?;
        }
        coeffs = next;
    }

    let n = series.len();
    debug_assert!({
        let lead = coeffs[n].as_polynomial();
        lead.degree() == Some(0) && lead.leading_coeff().map(Rational::is_one) == Some(true)
    });
    let p = (1..=n).map(|j| coeffs[n - j].as_polynomial()).collect();
    Ok(EsePolynomial { order, p })
}

/// `λ`-discriminant of the secular polynomial with respect to `W`.
pub fn ese_discriminant(ese: &EsePolynomial, mode: TruncationMode) -> Result<Polynomial> {
    let disc = poly_discriminant(&ese.as_w_poly())?;
    Ok(match mode {
        TruncationMode::Full => disc,
        TruncationMode::TruncateAfter => disc.truncated(ese.order()),
    })
}

/// All `N` roots in `W` at a fixed complex coupling. The coefficients
/// `p_j(λ)` are evaluated exactly as Gaussian rationals before the solve.
pub fn ese_roots_in_w(ese: &EsePolynomial, lambda: &CBigFloat, precision_bits: u32) -> Result<RootSet> {
    let z = lambda.to_crational();
    let n = ese.n_states();
    // ascending powers of W: p_N, p_{N-1}, …, p_1, 1
    let mut coeffs: Vec<CRational> = Vec::with_capacity(n + 1);
    for j in (1..=n).rev() {
        coeffs.push(ese.p(j).eval_crational(&z));
    }
    coeffs.push(CRational::one());
    roots::find_roots_complex(&coeffs, precision_bits, roots::DEFAULT_SEED, roots::DEFAULT_MAX_ITERATIONS)
}
