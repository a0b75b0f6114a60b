//! Exact Rayleigh–Schrödinger perturbation series for eigenvalues of a
//! banded operator.
//!
//! The recursion uses intermediate normalization (the component of every
//! wavefunction correction along the unperturbed state is zero), which
//! keeps the eigenvalue recursion as simple as possible; eigenvalue
//! coefficients do not depend on the normalization choice. Right-hand
//! vectors are enough even for asymmetric bands, because a diagonal
//! similarity leaves every eigenvalue series unchanged.
//!
//! With state `n` (1-based), order `j ≥ 1`, and `ε = diag0`:
//!
//! ```text
//! E_j    = (H_I c_{j-1})[n]
//! c_j[m] = [ (H_I c_{j-1})[m] - Σ_{i=1..j-1} E_i c_{j-i}[m] ] / (ε_n - ε_m)   (m ≠ n)
//! c_j[n] = 0
//! ```

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{Rational, TruncatedSeries};
use crate::model::BandedOperator;

/// Eigenvalue perturbation series for one state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenSeries {
    state: usize,
    series: TruncatedSeries,
}

impl EigenSeries {
    pub fn new(state: usize, series: TruncatedSeries) -> Self {
        assert!(state >= 1, "state indices are 1-based");
        Self { state, series }
    }

    /// 1-based state index, ordered by the unperturbed spectrum.
    pub fn state(&self) -> usize {
        self.state
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn into_series(self) -> TruncatedSeries {
        self.series
    }
}

/// Smallest matrix dimension that carries the order-`order` series of state
/// `state` exactly: corrections of order `j` have support within `j·bandwidth`
/// of the state, plus one margin row.
pub fn minimal_dim(state: usize, order: usize, bandwidth: usize) -> usize {
    state + order * bandwidth + 1
}

/// Exact series `E_n^{(0..=order)}` for the 1-based state `n`.
///
/// A truncated operator must satisfy `dim ≥ minimal_dim(state, order, b)`,
/// otherwise the high-order coefficients would silently differ from those
/// of the underlying operator. A complete operator (generic model data) is
/// its own underlying operator, so every order is exact for it.
pub fn rs_series(op: &BandedOperator, state: usize, order: usize) -> Result<EigenSeries> {
    let dim = op.dim();
    if state < 1 || state > dim {
        return Err(Error::StateOutOfRange { state, dim });
    }
    if !op.is_complete() {
        let required = minimal_dim(state, order, op.bandwidth());
        if dim < required {
            return Err(Error::DimensionTooSmall { required, actual: dim });
        }
    }
    let n = state - 1;
    let eps = op.diag0();

    let mut energies: Vec<Rational> = Vec::with_capacity(order + 1);
    energies.push(eps[n].clone());
    let mut unit = vec![Rational::zero(); dim];
    unit[n] = Rational::from_integer(1.into());
    let mut corrections: Vec<Vec<Rational>> = vec![unit];

    for j in 1..=order {
        let applied = op.apply_perturbation(&corrections[j - 1]);
        energies.push(applied[n].clone());
        let mut cj = vec![Rational::zero(); dim];
        for m in 0..dim {
            if m == n {
                continue;
            }
            let mut acc = applied[m].clone();
            for i in 1..j {
                if !corrections[j - i][m].is_zero() {
                    acc -= &energies[i] * &corrections[j - i][m];
                }
            }
            if !acc.is_zero() {
                cj[m] = acc / (&eps[n] - &eps[m]);
            }
        }
        corrections.push(cj);
    }

    Ok(EigenSeries::new(state, TruncatedSeries::new(energies)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use crate::model::{build_generic, build_mathieu, MathieuSubspace};
    use std::collections::BTreeMap;

    #[test]
    fn minimal_dim_rule() {
        assert_eq!(minimal_dim(1, 4, 1), 6);
        assert_eq!(minimal_dim(2, 13, 1), 16);
        assert_eq!(minimal_dim(1, 0, 1), 2);
    }

    #[test]
    fn two_pi_even_lowest_states_to_fourth_order() {
        let op = build_mathieu(MathieuSubspace::TwoPiEven, 8).unwrap();
        let e1 = rs_series(&op, 1, 4).unwrap();
        assert_eq!(
            e1.series().coeffs(),
            &[rat_int(1), rat_int(1), rat(-1, 8), rat(-1, 64), rat(-1, 1536)]
        );
        let e2 = rs_series(&op, 2, 4).unwrap();
        assert_eq!(
            e2.series().coeffs(),
            &[rat_int(9), rat_int(0), rat(1, 16), rat(1, 64), rat(13, 20480)]
        );
    }

    #[test]
    fn classical_expansions_of_the_other_subspaces() {
        // lowest characteristic values: a₀, b₂, b₁ expansions
        let cases: [(MathieuSubspace, [(i64, i64); 5]); 3] = [
            (MathieuSubspace::PiEven, [(0, 1), (0, 1), (-1, 2), (0, 1), (7, 128)]),
            (MathieuSubspace::PiOdd, [(4, 1), (0, 1), (-1, 12), (0, 1), (5, 13824)]),
            (MathieuSubspace::TwoPiOdd, [(1, 1), (-1, 1), (-1, 8), (1, 64), (-1, 1536)]),
        ];
        for (subspace, want) in cases {
            let op = build_mathieu(subspace, 8).unwrap();
            let e = rs_series(&op, 1, 4).unwrap();
            let expect: Vec<_> = want.iter().map(|&(p, q)| rat(p, q)).collect();
            assert_eq!(e.series().coeffs(), &expect[..], "{}", subspace.name());
        }
    }

    #[test]
    fn order_zero_is_the_unperturbed_eigenvalue() {
        let op = build_mathieu(MathieuSubspace::PiOdd, 4).unwrap();
        let e = rs_series(&op, 2, 0).unwrap();
        assert_eq!(e.series().coeffs(), &[rat_int(16)]);
    }

    #[test]
    fn first_order_equals_diagonal_perturbation_entry() {
        let op = build_mathieu(MathieuSubspace::TwoPiOdd, 6).unwrap();
        for n in 1..=3 {
            let e = rs_series(&op, n, 1).unwrap();
            assert_eq!(e.series().coeff(1), &op.perturbation_entry(n - 1, n - 1));
        }
    }

    #[test]
    fn second_order_sum_over_neighbors_for_tridiagonal() {
        let bands = BTreeMap::from([
            (1, vec![rat(1, 2), rat(3, 1), rat(-2, 5), rat(1, 1)]),
            (-1, vec![rat(7, 3), rat(-1, 4), rat(5, 1), rat(2, 3)]),
            (0, vec![rat(1, 9), rat_int(0), rat(2, 7), rat_int(1), rat_int(0)]),
        ]);
        let op = build_generic(
            vec![rat_int(0), rat(1, 2), rat_int(3), rat_int(7), rat_int(11)],
            bands,
        )
        .unwrap();
        for n in 1..=2 {
            let e = rs_series(&op, n, 2).unwrap();
            let i = n - 1;
            let mut expect = Rational::zero();
            for m in 0..op.dim() {
                if m == i {
                    continue;
                }
                let path = op.perturbation_entry(i, m) * op.perturbation_entry(m, i);
                if !path.is_zero() {
                    expect += path / (&op.diag0()[i] - &op.diag0()[m]);
                }
            }
            assert_eq!(e.series().coeff(2), &expect, "state {n}");
        }
    }

    #[test]
    fn pi_even_ground_state_second_order() {
        // 2·1/(0-4) = -1/2, from the asymmetric (2, 1) coupling pair
        let op = build_mathieu(MathieuSubspace::PiEven, 4).unwrap();
        let e = rs_series(&op, 1, 2).unwrap();
        assert_eq!(e.series().coeffs(), &[rat_int(0), rat_int(0), rat(-1, 2)]);
    }

    #[test]
    fn dimension_too_small_is_an_error() {
        let op = build_mathieu(MathieuSubspace::TwoPiEven, 4).unwrap();
        let got = rs_series(&op, 1, 4);
        assert!(matches!(got, Err(Error::DimensionTooSmall { required: 6, actual: 4 })));
    }

    #[test]
    fn state_out_of_range_is_an_error() {
        let op = build_mathieu(MathieuSubspace::TwoPiEven, 4).unwrap();
        assert!(matches!(rs_series(&op, 0, 1), Err(Error::StateOutOfRange { .. })));
        assert!(matches!(rs_series(&op, 5, 1), Err(Error::StateOutOfRange { .. })));
    }

    #[test]
    fn coefficients_stable_under_dimension_growth() {
        let k = 7;
        for state in 1..=2 {
            let d0 = minimal_dim(state, k, 1);
            let a = rs_series(&build_mathieu(MathieuSubspace::TwoPiEven, d0).unwrap(), state, k)
                .unwrap();
            let b =
                rs_series(&build_mathieu(MathieuSubspace::TwoPiEven, d0 + 5).unwrap(), state, k)
                    .unwrap();
            assert_eq!(a.series(), b.series());
        }
    }

    #[test]
    fn thirteenth_order_spot_values() {
        let op = build_mathieu(MathieuSubspace::TwoPiEven, 16).unwrap();
        let e1 = rs_series(&op, 1, 13).unwrap();
        assert_eq!(e1.series().coeff(8), &rat(-83, 35389440));
        assert_eq!(e1.series().coeff(13), &rat(944750239, 981891371394662400));
        let e2 = rs_series(&op, 2, 13).unwrap();
        assert_eq!(e2.series().coeff(5), &rat(-5, 16384));
        assert_eq!(
            e2.series().coeff(13),
            &Rational::new((-27992567161i64).into(), 29093077670952960000i128.into())
        );
    }
}
