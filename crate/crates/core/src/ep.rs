//! End-to-end exceptional-point location: model → exact series → secular
//! polynomial → discriminant → smallest-modulus root, plus the independent
//! floating-point oracles (dense diagonalization, series ratio analysis)
//! used to cross-check the exact pipeline.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ese::{build_ese, ese_discriminant, ese_roots_in_w, TruncationMode};
use crate::exact::{BigFloat, CBigFloat, Rational};
use crate::model::{BandedOperator, ModelSpec};
use crate::roots::{find_roots_seeded, smallest_modulus_roots, DEFAULT_MAX_ITERATIONS};
use crate::rspt::{minimal_dim, rs_series, EigenSeries};

/// Independently obtained high-accuracy modulus of the exceptional point
/// closest to the origin for the two lowest period-2π even Mathieu states;
/// the convergence target for the default table.
pub const MATHIEU_2PI_EVEN_EP_MODULUS: f64 = 3.769957494;

/// Coalescence gap below which a candidate is considered verified
/// (adequate for order ≥ 10 at 128-bit precision: the gap at an exact
/// discriminant root scales like the square root of the rounding error).
pub const DEFAULT_COALESCENCE_GAP: f64 = 1e-4;

/// Lambda moduli at or below this are treated as the origin when selecting
/// the closest root.
pub const EXCLUDE_ZERO_TOLERANCE: f64 = 1e-12;

/// A located exceptional-point candidate with its diagnostics.
#[derive(Debug, Clone)]
pub struct ExceptionalPointEstimate {
    order: usize,
    n_states: usize,
    mode: TruncationMode,
    precision_bits: u32,
    lambda: CBigFloat,
    modulus: BigFloat,
    coalescence_gap: BigFloat,
    discriminant_residual: BigFloat,
}

impl ExceptionalPointEstimate {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn mode(&self) -> TruncationMode {
        self.mode
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// Upper half-plane representative of the conjugate pair.
    pub fn lambda(&self) -> &CBigFloat {
        &self.lambda
    }

    pub fn modulus(&self) -> &BigFloat {
        &self.modulus
    }

    /// Minimal pairwise distance of the secular roots in `W` at `λ_p`.
    pub fn coalescence_gap(&self) -> &BigFloat {
        &self.coalescence_gap
    }

    /// `|disc(λ_p)|`, evaluated exactly and rounded once.
    pub fn discriminant_residual(&self) -> &BigFloat {
        &self.discriminant_residual
    }

    pub fn is_coalesced(&self, gap_threshold: f64) -> bool {
        self.coalescence_gap.to_f64() <= gap_threshold
    }
}

/// Locates the exceptional point closest to the origin for the given model
/// space. Deterministic for a fixed seed.
pub fn locate_ep(
    model: &ModelSpec,
    states: &[usize],
    order: usize,
    mode: TruncationMode,
    precision_bits: u32,
    seed: u64,
) -> Result<ExceptionalPointEstimate> {
    let series = model_space_series(model, states, order)?;
    let ese = build_ese(&series)?;
    let disc = ese_discriminant(&ese, mode)?;
    if disc.degree().map_or(true, |d| d == 0) {
        return Err(Error::NoExceptionalPoint { order });
    }
    let roots = find_roots_seeded(&disc, precision_bits, seed, DEFAULT_MAX_ITERATIONS)?;
    let nearest = smallest_modulus_roots(&roots, EXCLUDE_ZERO_TOLERANCE)?;
    let lambda = nearest[0].clone();
    let modulus = lambda.abs(precision_bits);
    let w_roots = ese_roots_in_w(&ese, &lambda, precision_bits)?;
    let gap = min_pairwise_distance(w_roots.roots(), precision_bits)
        .unwrap_or_else(BigFloat::zero);
    let residual = disc.eval_complex(&lambda, precision_bits).abs(precision_bits);
    Ok(ExceptionalPointEstimate {
        order,
        n_states: states.len(),
        mode,
        precision_bits,
        lambda,
        modulus,
        coalescence_gap: gap,
        discriminant_residual: residual,
    })
}

/// Exact series for every requested state, on a matrix sized to keep all
/// of them exact at the requested order.
pub fn model_space_series(
    model: &ModelSpec,
    states: &[usize],
    order: usize,
) -> Result<Vec<EigenSeries>> {
    if states.is_empty() {
        return Err(Error::BadModel("empty model-space state list".into()));
    }
    for (i, a) in states.iter().enumerate() {
        if *a < 1 {
            return Err(Error::StateOutOfRange { state: *a, dim: 0 });
        }
        if states[i + 1..].contains(a) {
            return Err(Error::DuplicateState { state: *a });
        }
    }
    let bandwidth = model.bandwidth().max(1);
    let need = states.iter().map(|&n| minimal_dim(n, order, bandwidth)).max().unwrap();
    let op = model.build(need)?;
    states.iter().map(|&n| rs_series(&op, n, order)).collect()
}

/// One row of an order-scan table.
#[derive(Debug, Clone)]
pub struct EpRow {
    pub order: usize,
    pub outcome: Result<ExceptionalPointEstimate>,
}

/// Runs [`locate_ep`] for each order; failures are recorded per row rather
/// than aborting the scan. Rows are ordered as given.
pub fn ep_table(
    model: &ModelSpec,
    states: &[usize],
    orders: &[usize],
    mode: TruncationMode,
    precision_bits: u32,
    seed: u64,
) -> Vec<EpRow> {
    orders
        .iter()
        .map(|&order| EpRow {
            order,
            outcome: locate_ep(model, states, order, mode, precision_bits, seed),
        })
        .collect()
}

fn min_pairwise_distance(roots: &[CBigFloat], prec: u32) -> Option<BigFloat> {
    let mut best: Option<BigFloat> = None;
    for (i, a) in roots.iter().enumerate() {
        for b in roots.iter().skip(i + 1) {
            let d = a.sub(b, prec).abs(prec);
            best = Some(match best {
                Some(cur) if cur.cmp_exact(&d).is_le() => cur,
                _ => d,
            });
        }
    }
    best
}

fn rational_to_f64(r: &Rational) -> f64 {
    BigFloat::from_rational(r, 64).to_f64()
}

/// Lowest eigenvalues of the dense `dim × dim` truncation of
/// `H₀ + λ·H_I`, by an independent floating-point eigensolver.
///
/// The matrix is rebuilt at `dim + 10` and the lowest `count` values must
/// agree to `1e-10`, otherwise the truncation is reported as not converged.
/// This path shares no arithmetic with the exact pipeline it checks.
pub fn oracle_eigenvalues(
    model: &ModelSpec,
    lambda: f64,
    dim: usize,
    count: usize,
) -> Result<Vec<f64>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let full = model.build(dim + 10)?;
    let cap = full.dim();
    let d1 = dim.min(cap);
    let d2 = (dim + 10).min(cap);
    if d1 < count {
        return Err(Error::DimensionTooSmall { required: count, actual: d1 });
    }
    let small = full.truncate(d1)?;
    let evs1 = dense_eigenvalues(&small, lambda, count)?;
    let evs2 = if d2 > d1 {
        dense_eigenvalues(&full.truncate(d2)?, lambda, count)?
    } else {
        evs1.clone()
    };
    let drift = evs1
        .iter()
        .zip(&evs2)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if drift > 1e-10 {
        return Err(Error::OracleNotConverged { dim: d2, drift });
    }
    Ok(evs2)
}

fn dense_eigenvalues(op: &BandedOperator, lambda: f64, count: usize) -> Result<Vec<f64>> {
    let m = op.dim();
    let entry = |i: usize, j: usize| -> f64 {
        let mut v = if i == j { rational_to_f64(&op.diag0()[i]) } else { 0.0 };
        v += lambda * rational_to_f64(&op.perturbation_entry(i, j));
        v
    };

    let symmetric = op
        .bands()
        .iter()
        .filter(|(&d, _)| d > 0)
        .all(|(&d, sup)| op.bands().get(&-d).map(|sub| sub == sup).unwrap_or(false))
        && op
            .bands()
            .iter()
            .filter(|(&d, _)| d < 0)
            .all(|(&d, sub)| op.bands().get(&-d).map(|sup| sup == sub).unwrap_or(false));

    let mut evs: Vec<f64>;
    if symmetric {
        let mat = nalgebra::DMatrix::from_fn(m, m, entry);
        evs = nalgebra::SymmetricEigen::new(mat).eigenvalues.iter().copied().collect();
    } else if op.bandwidth() <= 1 && balanceable_tridiagonal(op) {
        // diagonal similarity: replace (u, l) couplings by the symmetric
        // pair sqrt(u·l); eigenvalues are unchanged
        let mat = nalgebra::DMatrix::from_fn(m, m, |i, j| {
            if i == j {
                entry(i, j)
            } else if j == i + 1 || i == j + 1 {
                let k = i.min(j);
                (entry(k, k + 1) * entry(k + 1, k)).sqrt()
            } else {
                0.0
            }
        });
        evs = nalgebra::SymmetricEigen::new(mat).eigenvalues.iter().copied().collect();
    } else {
        let mat = nalgebra::DMatrix::from_fn(m, m, entry);
        evs = mat.complex_eigenvalues().iter().map(|z| z.re).collect();
    }
    evs.sort_by(f64::total_cmp);
    evs.truncate(count);
    Ok(evs)
}

fn balanceable_tridiagonal(op: &BandedOperator) -> bool {
    let m = op.dim();
    (0..m - 1).all(|k| {
        let u = rational_to_f64(&op.perturbation_entry(k, k + 1));
        let l = rational_to_f64(&op.perturbation_entry(k + 1, k));
        u * l > 0.0 || (u == 0.0 && l == 0.0)
    })
}

/// Radius-of-convergence estimate from the series coefficients.
#[derive(Debug, Clone, Copy)]
pub struct RadiusEstimate {
    /// Ratio-extrapolation value (the primary estimate).
    pub radius: f64,
    /// Crude root-test value `|a_m|^(-1/m)` at the last nonzero
    /// coefficient, as a secondary consistency indicator.
    pub root_test: f64,
    /// Whether the oscillation-robust pair-correlation path was used.
    pub oscillatory: bool,
    /// Number of fit points.
    pub points: usize,
}

const RADIUS_FIT_POINTS: usize = 6;

/// Estimates the radius of convergence by ratio extrapolation.
///
/// When successive coefficient ratios keep one sign, a Domb–Sykes fit of
/// `a_j / a_{j+1}` against `1/j` is extrapolated to `1/j → 0`. When the
/// signs oscillate (conjugate-pair singularities), the fit runs instead on
/// `sqrt(b_{j-1}/b_j)` with `b_j = a_{j+1}·a_{j-1} - a_j²`, which cancels
/// the oscillating factor and converges to the same radius.
pub fn estimate_radius(series: &EigenSeries) -> Result<RadiusEstimate> {
    let coeffs = series.series().coeffs();
    if coeffs.len() < 7 {
        return Err(Error::InsufficientSeries(format!(
            "order {} below the minimum of 6",
            coeffs.len() - 1
        )));
    }
    let Some(last) = coeffs.iter().rposition(|c| !c.is_zero()) else {
        return Err(Error::InsufficientSeries("all coefficients vanish".into()));
    };
    if last < 6 {
        return Err(Error::InsufficientSeries(format!(
            "nonzero coefficients end at order {last}, need at least 6"
        )));
    }
    let root_test = rational_to_f64(&coeffs[last]).abs().powf(-1.0 / last as f64);

    // maximal run of consecutive nonzero coefficients ending at `last`
    let mut start = last;
    while start > 0 && !coeffs[start - 1].is_zero() {
        start -= 1;
    }

    // direct ratios a_j / a_{j+1} over the run, skipping j = 0
    let mut direct: Vec<(f64, f64)> = Vec::new();
    for j in start.max(1)..last {
        let r = rational_to_f64(&(&coeffs[j] / &coeffs[j + 1]));
        direct.push((1.0 / j as f64, r));
    }
    let same_sign = direct.len() >= 4
        && (direct.iter().all(|&(_, r)| r > 0.0) || direct.iter().all(|&(_, r)| r < 0.0));
    if same_sign {
        let tail = &direct[direct.len().saturating_sub(RADIUS_FIT_POINTS)..];
        let (intercept, _) = linear_fit(tail);
        return Ok(RadiusEstimate {
            radius: intercept.abs(),
            root_test,
            oscillatory: false,
            points: tail.len(),
        });
    }

    // pair-correlation path: b_j = a_{j+1} a_{j-1} - a_j², exactly
    let mut pair_points: Vec<(f64, f64)> = Vec::new();
    let b = |j: usize| -> Rational { &coeffs[j + 1] * &coeffs[j - 1] - &coeffs[j] * &coeffs[j] };
    let mut prev: Option<Rational> = None;
    for j in start.max(1)..last {
        let bj = b(j);
        if let Some(p) = prev {
            if !bj.is_zero() {
                let q = rational_to_f64(&(p / &bj));
                pair_points.push((1.0 / j as f64, q.abs().sqrt()));
            } else {
                pair_points.clear();
            }
        }
        prev = if bj.is_zero() { None } else { Some(bj) };
    }
    if pair_points.len() < 4 {
        return Err(Error::InsufficientSeries(
            "too few usable ratio points for the oscillatory fit".into(),
        ));
    }
    let tail = &pair_points[pair_points.len().saturating_sub(RADIUS_FIT_POINTS)..];
    let (intercept, _) = linear_fit(tail);
    Ok(RadiusEstimate {
        radius: intercept.abs(),
        root_test,
        oscillatory: true,
        points: tail.len(),
    })
}

/// Least-squares line `y = intercept + slope·x`.
fn linear_fit(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let det = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / det;
    let intercept = (sy - slope * sx) / n;
    (intercept, slope)
}
