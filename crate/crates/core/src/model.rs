//! Banded matrix models `H = H₀ + λ·H_I` with exact rational entries.
//!
//! `H₀` is diagonal with a strictly increasing, nondegenerate spectrum.
//! The perturbation `H_I` is stored band by band; entries may be
//! asymmetric (`bands[+d]` need not equal `bands[-d]`), since eigenvalues
//! only see the products of paired entries and a diagonal similarity can
//! always trade a symmetric irrational pair for an asymmetric rational one.
//!
//! The four Mathieu builders represent `-d²/dx² + 2λ·cos(2x)` on the
//! period-π and period-2π, even and odd trigonometric bases. Their exact
//! matrix elements follow from `2cos(2x)cos(mx) = cos((m+2)x) + cos((m-2)x)`
//! and the sine analogue:
//!
//! * 2π even, basis `cos((2k-1)x)`: `diag0 = 1, 9, 25, …`; all couplings 1;
//!   the `cos x` state couples to itself with `+1`.
//! * 2π odd, basis `sin((2k-1)x)`: same `diag0`; self-coupling `-1`.
//! * π even, basis `1, cos(2kx)`: `diag0 = 0, 4, 16, …`; the normalization
//!   mismatch of the constant state would give a √2 pair, replaced here by
//!   the similarity-equivalent rational pair (2, 1); other couplings 1.
//! * π odd, basis `sin(2kx)`: `diag0 = 4, 16, 36, …`; all couplings 1.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{rat_int, Rational};

/// One of the four Mathieu symmetry subspaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MathieuSubspace {
    PiEven,
    PiOdd,
    TwoPiEven,
    TwoPiOdd,
}

impl MathieuSubspace {
    pub const ALL: [MathieuSubspace; 4] =
        [Self::PiEven, Self::PiOdd, Self::TwoPiEven, Self::TwoPiOdd];

    pub fn name(&self) -> &'static str {
        match self {
            Self::PiEven => "mathieu-pi-even",
            Self::PiOdd => "mathieu-pi-odd",
            Self::TwoPiEven => "mathieu-2pi-even",
            Self::TwoPiOdd => "mathieu-2pi-odd",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|s| s.name() == name)
    }
}

/// Recipe for building a [`BandedOperator`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelSpec {
    /// Built-in Mathieu subspace; the dimension is chosen at build time.
    Mathieu(MathieuSubspace),
    /// Explicit matrix data; the dimension is fixed by the data.
    Generic {
        diag0: Vec<Rational>,
        bands: BTreeMap<i64, Vec<Rational>>,
    },
}

impl ModelSpec {
    pub fn name(&self) -> String {
        match self {
            Self::Mathieu(s) => s.name().to_string(),
            Self::Generic { .. } => "generic".to_string(),
        }
    }

    /// Bandwidth without building (needed to size the matrix up front).
    pub fn bandwidth(&self) -> usize {
        match self {
            Self::Mathieu(_) => 1,
            Self::Generic { bands, .. } => {
                bands.keys().map(|d| d.unsigned_abs() as usize).max().unwrap_or(0)
            }
        }
    }

    /// Builds the operator with at least `min_dim` states when the kind
    /// allows choosing (generic data has a fixed dimension).
    pub fn build(&self, min_dim: usize) -> Result<BandedOperator> {
        match self {
            Self::Mathieu(subspace) => build_mathieu(*subspace, min_dim.max(2)),
            Self::Generic { diag0, bands } => build_generic(diag0.clone(), bands.clone()),
        }
    }
}

/// Finite banded representation of `H = H₀ + λ·H_I`, exact entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandedOperator {
    dim: usize,
    diag0: Vec<Rational>,
    bands: BTreeMap<i64, Vec<Rational>>,
    /// True when the matrix is the whole operator rather than the leading
    /// block of a larger one. Complete operators have exact perturbation
    /// series at every order; truncations only up to the order their
    /// dimension supports.
    complete: bool,
}

impl BandedOperator {
    /// Validates and constructs a *truncation* of a larger operator.
    /// `bands[d]` holds the entries `H_I[i][i+d]` indexed by `min(i, i+d)`,
    /// so a band at offset `±d` has `dim - |d|` entries.
    pub fn new(diag0: Vec<Rational>, bands: BTreeMap<i64, Vec<Rational>>) -> Result<Self> {
        let dim = diag0.len();
        if dim < 2 {
            return Err(Error::DimensionTooSmall { required: 2, actual: dim });
        }
        for w in 0..dim - 1 {
            if diag0[w] == diag0[w + 1] {
                return Err(Error::Degenerate { a: w, b: w + 1 });
            }
            if diag0[w] > diag0[w + 1] {
                return Err(Error::BadModel(format!(
                    "diag0 must be strictly increasing, got {} before {} at index {}",
                    diag0[w],
                    diag0[w + 1],
                    w
                )));
            }
        }
        // increasing order makes equal non-adjacent entries impossible,
        // so adjacent checks cover full nondegeneracy
        for (&d, entries) in &bands {
            let len = dim.checked_sub(d.unsigned_abs() as usize);
            match len {
                Some(len) if len == entries.len() && len > 0 => {}
                _ => {
                    return Err(Error::BadModel(format!(
                        "band {} must have {} entries for dimension {}, got {}",
                        d,
                        dim as i64 - d.abs(),
                        dim,
                        entries.len()
                    )))
                }
            }
        }
        Ok(Self { dim, diag0, bands, complete: false })
    }

    /// As [`BandedOperator::new`], for a matrix that is the entire operator.
    pub fn new_complete(
        diag0: Vec<Rational>,
        bands: BTreeMap<i64, Vec<Rational>>,
    ) -> Result<Self> {
        let mut op = Self::new(diag0, bands)?;
        op.complete = true;
        Ok(op)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn diag0(&self) -> &[Rational] {
        &self.diag0
    }

    pub fn bands(&self) -> &BTreeMap<i64, Vec<Rational>> {
        &self.bands
    }

    /// Largest band offset carrying any nonzero entry.
    pub fn bandwidth(&self) -> usize {
        self.bands
            .iter()
            .filter(|(_, v)| v.iter().any(|c| !c.is_zero()))
            .map(|(d, _)| d.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Entry `H_I[row][col]`, zero outside the stored bands.
    pub fn perturbation_entry(&self, row: usize, col: usize) -> Rational {
        let d = col as i64 - row as i64;
        match self.bands.get(&d) {
            Some(entries) => entries.get(row.min(col)).cloned().unwrap_or_else(Rational::zero),
            None => Rational::zero(),
        }
    }

    /// `H_I · v`, exactly.
    pub fn apply_perturbation(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim, "vector length must match dimension");
        let mut out = vec![Rational::zero(); self.dim];
        for (&d, entries) in &self.bands {
            for (k, e) in entries.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                // e = H_I[i][j] with {i, j} = {k, k + |d|}
                let (i, j) = if d >= 0 { (k, k + d as usize) } else { (k + (-d) as usize, k) };
                if !v[j].is_zero() {
                    out[i] += e * &v[j];
                }
            }
        }
        out
    }

    /// Restriction to the leading `dim` states; the result is a truncation
    /// even when `self` is complete (unless nothing was cut).
    pub fn truncate(&self, dim: usize) -> Result<Self> {
        if dim > self.dim {
            return Err(Error::DimensionTooSmall { required: dim, actual: self.dim });
        }
        if dim == self.dim {
            return Ok(self.clone());
        }
        let diag0 = self.diag0[..dim].to_vec();
        let bands = self
            .bands
            .iter()
            .filter(|(d, _)| (d.unsigned_abs() as usize) < dim)
            .map(|(&d, v)| (d, v[..dim - d.unsigned_abs() as usize].to_vec()))
            .collect();
        Self::new(diag0, bands)
    }
}

/// Tridiagonal Mathieu representation for one symmetry subspace.
pub fn build_mathieu(subspace: MathieuSubspace, dim: usize) -> Result<BandedOperator> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { required: 2, actual: dim });
    }
    let ones = |n: usize| vec![rat_int(1); n];
    let (diag0, diag_band, sup, sub): (Vec<Rational>, Vec<Rational>, Vec<Rational>, Vec<Rational>) =
        match subspace {
            MathieuSubspace::TwoPiEven | MathieuSubspace::TwoPiOdd => {
                let diag0 = (0..dim).map(|k| rat_int(((2 * k + 1) * (2 * k + 1)) as i64)).collect();
                let self_coupling =
                    if subspace == MathieuSubspace::TwoPiEven { rat_int(1) } else { rat_int(-1) };
                let mut diag_band = vec![Rational::zero(); dim];
                diag_band[0] = self_coupling;
                (diag0, diag_band, ones(dim - 1), ones(dim - 1))
            }
            MathieuSubspace::PiEven => {
                let diag0 = (0..dim).map(|k| rat_int(((2 * k) * (2 * k)) as i64)).collect();
                let mut sup = ones(dim - 1);
                sup[0] = rat_int(2);
                (diag0, vec![Rational::zero(); dim], sup, ones(dim - 1))
            }
            MathieuSubspace::PiOdd => {
                let diag0 =
                    (0..dim).map(|k| rat_int(((2 * k + 2) * (2 * k + 2)) as i64)).collect();
                (diag0, vec![Rational::zero(); dim], ones(dim - 1), ones(dim - 1))
            }
        };
    let mut bands = BTreeMap::new();
    if diag_band.iter().any(|c| !c.is_zero()) {
        bands.insert(0, diag_band);
    }
    bands.insert(1, sup);
    bands.insert(-1, sub);
    BandedOperator::new(diag0, bands)
}

/// Operator from explicit diagonal and band data. The data is taken as the
/// whole operator, so its eigenvalue series are exact at every order.
pub fn build_generic(
    diag0: Vec<Rational>,
    bands: BTreeMap<i64, Vec<Rational>>,
) -> Result<BandedOperator> {
    BandedOperator::new_complete(diag0, bands)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn two_pi_even_structure() {
        let op = build_mathieu(MathieuSubspace::TwoPiEven, 3).unwrap();
        assert_eq!(op.diag0(), &[rat_int(1), rat_int(9), rat_int(25)]);
        assert_eq!(op.perturbation_entry(0, 0), rat_int(1));
        assert_eq!(op.perturbation_entry(1, 1), rat_int(0));
        assert_eq!(op.perturbation_entry(0, 1), rat_int(1));
        assert_eq!(op.perturbation_entry(1, 0), rat_int(1));
        assert_eq!(op.perturbation_entry(2, 0), rat_int(0));
        assert_eq!(op.bandwidth(), 1);
    }

    #[test]
    fn unperturbed_spectra_by_subspace() {
        let spectra: [(MathieuSubspace, [i64; 4]); 4] = [
            (MathieuSubspace::TwoPiEven, [1, 9, 25, 49]),
            (MathieuSubspace::TwoPiOdd, [1, 9, 25, 49]),
            (MathieuSubspace::PiEven, [0, 4, 16, 36]),
            (MathieuSubspace::PiOdd, [4, 16, 36, 64]),
        ];
        for (subspace, expected) in spectra {
            let op = build_mathieu(subspace, 4).unwrap();
            let want: Vec<Rational> = expected.iter().map(|&x| rat_int(x)).collect();
            assert_eq!(op.diag0(), &want[..], "{}", subspace.name());
        }
    }

    #[test]
    fn pi_even_asymmetric_first_coupling() {
        let op = build_mathieu(MathieuSubspace::PiEven, 3).unwrap();
        assert_eq!(op.perturbation_entry(0, 1), rat_int(2));
        assert_eq!(op.perturbation_entry(1, 0), rat_int(1));
        assert_eq!(op.perturbation_entry(1, 2), rat_int(1));
        assert_eq!(op.perturbation_entry(2, 1), rat_int(1));
    }

    #[test]
    fn dimension_below_two_rejected() {
        assert!(matches!(
            build_mathieu(MathieuSubspace::TwoPiEven, 1),
            Err(Error::DimensionTooSmall { required: 2, actual: 1 })
        ));
    }

    #[test]
    fn generic_tridiagonal_accepted() {
        let bands = BTreeMap::from([
            (1, vec![rat_int(1), rat_int(1)]),
            (-1, vec![rat_int(1), rat_int(1)]),
        ]);
        let op = build_generic(vec![rat_int(1), rat_int(2), rat_int(3)], bands).unwrap();
        assert_eq!(op.dim(), 3);
    }

    #[test]
    fn degenerate_diagonal_rejected() {
        let bands = BTreeMap::from([(1, vec![rat_int(1), rat_int(1)])]);
        let got = build_generic(vec![rat_int(1), rat_int(1), rat_int(3)], bands);
        assert!(matches!(got, Err(Error::Degenerate { a: 0, b: 1 })));
    }

    #[test]
    fn asymmetric_generic_accepted() {
        let bands = BTreeMap::from([(1, vec![rat_int(2)]), (-1, vec![rat_int(1)])]);
        let op = build_generic(vec![rat_int(0), rat_int(4)], bands).unwrap();
        assert_eq!(op.perturbation_entry(0, 1), rat_int(2));
        assert_eq!(op.perturbation_entry(1, 0), rat_int(1));
    }

    #[test]
    fn wrong_band_length_rejected() {
        let bands = BTreeMap::from([(1, vec![rat_int(1)])]);
        assert!(matches!(
            build_generic(vec![rat_int(1), rat_int(2), rat_int(3)], bands),
            Err(Error::BadModel(_))
        ));
    }

    #[test]
    fn apply_perturbation_matches_entries() {
        let op = build_mathieu(MathieuSubspace::PiEven, 4).unwrap();
        let v = vec![rat(1, 2), rat_int(1), rat_int(0), rat_int(3)];
        let w = op.apply_perturbation(&v);
        for i in 0..4 {
            let mut expect = Rational::zero();
            for j in 0..4 {
                expect += op.perturbation_entry(i, j) * &v[j];
            }
            assert_eq!(w[i], expect, "row {i}");
        }
    }

    #[test]
    fn truncate_keeps_leading_block() {
        let op = build_mathieu(MathieuSubspace::TwoPiEven, 6).unwrap();
        let cut = op.truncate(3).unwrap();
        assert_eq!(cut, build_mathieu(MathieuSubspace::TwoPiEven, 3).unwrap());
    }

    #[test]
    fn subspace_names_roundtrip() {
        for s in MathieuSubspace::ALL {
            assert_eq!(MathieuSubspace::parse(s.name()), Some(s));
        }
        assert_eq!(MathieuSubspace::parse("mathieu-3pi-even"), None);
    }
}
