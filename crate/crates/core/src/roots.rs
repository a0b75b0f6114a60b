//! Simultaneous complex root finding (Aberth–Ehrlich) at configurable
//! precision.
//!
//! Every polynomial evaluation in the iteration is carried out exactly:
//! coefficients are cleared to Gaussian integers over a common denominator,
//! iterates are dyadic rationals, and the exact integer Horner value is
//! rounded once into the working precision. Evaluation cancellation is
//! therefore never an error source, and an iterate that lands exactly on a
//! root is recognized exactly. Iterates are seeded on a perturbed circle at
//! the Fujiwara root bound with a deterministic generator, so a fixed seed
//! reproduces the same output bit for bit.
//!
//! Near-multiple roots are not deflated; they converge as a tight cluster
//! and can be grouped afterwards (see [`RootSet::clusters`]).

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::rational::log2_abs;
use crate::exact::{BigFloat, CBigFloat, CRational, Polynomial};

/// Default pseudo-random seed for initial-guess placement.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Default iteration cap before reporting non-convergence.
pub const DEFAULT_MAX_ITERATIONS: usize = 200;

/// All complex roots of one polynomial, with exact-evaluation residuals.
#[derive(Debug, Clone)]
pub struct RootSet {
    roots: Vec<CBigFloat>,
    residuals: Vec<BigFloat>,
    root_errors: Vec<BigFloat>,
    precision_bits: u32,
}

impl RootSet {
    pub fn roots(&self) -> &[CBigFloat] {
        &self.roots
    }

    /// `|p(root)|` for each root, computed exactly and rounded once.
    pub fn residuals(&self) -> &[BigFloat] {
        &self.residuals
    }

    /// Magnitude of the final Newton correction per root: a forward-error
    /// measure in the same units as the root itself.
    pub fn root_errors(&self) -> &[BigFloat] {
        &self.root_errors
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(BigFloat::to_f64).fold(0.0, f64::max)
    }

    /// Groups roots whose pairwise distance is below `tol`; each cluster is
    /// a list of root indices. Single links are enough at the scales where
    /// this is used (clusters far smaller than their separation).
    pub fn clusters(&self, tol: f64) -> Vec<Vec<usize>> {
        let prec = self.precision_bits;
        let n = self.roots.len();
        let mut assigned = vec![usize::MAX; n];
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if assigned[i] != usize::MAX {
                continue;
            }
            let id = clusters.len();
            let mut members = vec![i];
            assigned[i] = id;
            let mut cursor = 0;
            while cursor < members.len() {
                let a = members[cursor];
                cursor += 1;
                for b in 0..n {
                    if assigned[b] != usize::MAX {
                        continue;
                    }
                    let d = self.roots[a].sub(&self.roots[b], prec).abs(prec).to_f64();
                    if d <= tol {
                        assigned[b] = id;
                        members.push(b);
                    }
                }
            }
            clusters.push(members);
        }
        clusters
    }
}

/// Polynomial with Gaussian-integer coefficients over one positive
/// denominator; the exact-evaluation workhorse.
struct GaussIntPoly {
    re: Vec<BigInt>,
    im: Vec<BigInt>,
    den: BigInt,
}

impl GaussIntPoly {
    fn new(coeffs: &[CRational]) -> Self {
        let mut den = num_bigint::BigUint::from(1u32);
        for c in coeffs {
            den = crate::exact::rational::lcm_biguint(&den, c.re.denom().magnitude());
            den = crate::exact::rational::lcm_biguint(&den, c.im.denom().magnitude());
        }
        let den = BigInt::from(den);
        let mut re = Vec::with_capacity(coeffs.len());
        let mut im = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            re.push(c.re.numer() * (&den / c.re.denom()));
            im.push(c.im.numer() * (&den / c.im.denom()));
        }
        Self { re, im, den }
    }

    fn degree(&self) -> usize {
        self.re.len() - 1
    }

    /// Exact `p(z)` as `(num_re + i·num_im) / scaled_den`.
    fn eval(&self, z: &CBigFloat) -> (BigInt, BigInt, BigInt) {
        let deg = self.degree();
        let (ur, ui, shift) = z.to_dyadic_ints();
        let mut acc_re = self.re[deg].clone();
        let mut acc_im = self.im[deg].clone();
        for j in (0..deg).rev() {
            let t_re = &acc_re * &ur - &acc_im * &ui;
            let t_im = &acc_re * &ui + &acc_im * &ur;
            let up = (deg - j) as u64 * shift;
            acc_re = t_re + (&self.re[j] << up);
            acc_im = t_im + (&self.im[j] << up);
        }
        let scaled_den = &self.den << (deg as u64 * shift);
        (acc_re, acc_im, scaled_den)
    }
}

/// `(n_re + i·n_im)/n_den ÷ (d_re + i·d_im)/d_den`, exactly, rounded once
/// per component. Denominators must be positive.
fn gaussian_ratio(
    n: (&BigInt, &BigInt, &BigInt),
    d: (&BigInt, &BigInt, &BigInt),
    prec: u32,
) -> CBigFloat {
    let (nr, ni, nden) = n;
    let (dr, di, dden) = d;
    // (n/nden)/(d/dden) = n·conj(d)·dden / (|d|²·nden)
    let re_num = (nr * dr + ni * di) * dden;
    let im_num = (ni * dr - nr * di) * dden;
    let den = (dr * dr + di * di) * nden;
    CBigFloat::new(BigFloat::from_ratio(&re_num, &den, prec), BigFloat::from_ratio(&im_num, &den, prec))
}

/// `|p(z)|` from an exact evaluation triple, rounded once.
fn residual_magnitude(num_re: &BigInt, num_im: &BigInt, den: &BigInt, prec: u32) -> BigFloat {
    let n2 = num_re * num_re + num_im * num_im;
    let d2 = den * den;
    BigFloat::from_ratio(&n2, &d2, prec + 8).sqrt(prec)
}

/// log2 of the magnitude of a Gaussian rational, within about one bit.
fn clog2(c: &CRational) -> Option<f64> {
    match (log2_abs(&c.re), log2_abs(&c.im)) {
        (Some(a), Some(b)) => Some(a.max(b) + 0.5),
        (Some(a), None) => Some(a),
        (None, Some(b)) => Some(b),
        (None, None) => None,
    }
}

/// Fujiwara-style bound on root moduli, as log2.
fn root_bound_log2(coeffs: &[CRational]) -> f64 {
    let deg = coeffs.len() - 1;
    let lead = clog2(&coeffs[deg]).expect("leading coefficient is nonzero");
    let mut best = f64::NEG_INFINITY;
    for k in 1..=deg {
        if let Some(l) = clog2(&coeffs[deg - k]) {
            best = best.max((l - lead) / k as f64);
        }
    }
    if !best.is_finite() {
        return 0.0; // pure monomial: all roots at the origin
    }
    (best + 1.0).clamp(-400.0, 400.0)
}

/// All roots of a rational-coefficient polynomial at the given precision,
/// with default seed and iteration cap.
pub fn find_roots(p: &Polynomial, precision_bits: u32) -> Result<RootSet> {
    find_roots_seeded(p, precision_bits, DEFAULT_SEED, DEFAULT_MAX_ITERATIONS)
}

/// As [`find_roots`], with explicit seed and iteration cap.
pub fn find_roots_seeded(
    p: &Polynomial,
    precision_bits: u32,
    seed: u64,
    max_iterations: usize,
) -> Result<RootSet> {
    let coeffs: Vec<CRational> = p.coeffs().iter().cloned().map(CRational::from_real).collect();
    find_roots_complex(&coeffs, precision_bits, seed, max_iterations)
}

/// Aberth–Ehrlich on Gaussian-rational coefficients.
///
/// Gauss–Seidel sweeps (each update sees the newest co-iterates), exact
/// evaluation, Newton polish at the end. A constant nonzero polynomial
/// yields an empty root set; the zero polynomial is an error.
pub fn find_roots_complex(
    coeffs: &[CRational],
    precision_bits: u32,
    seed: u64,
    max_iterations: usize,
) -> Result<RootSet> {
    let prec = precision_bits.max(16);
    let mut c: Vec<CRational> = coeffs.to_vec();
    while c.last().is_some_and(CRational::is_zero) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    // roots at the origin are exact: deflate them before iterating
    let zeros_at_origin = c.iter().take_while(|c| c.is_zero()).count();
    if zeros_at_origin > 0 {
        let mut rs =
            find_roots_complex(&c[zeros_at_origin..], precision_bits, seed, max_iterations)?;
        for _ in 0..zeros_at_origin {
            rs.roots.insert(0, CBigFloat::zero());
            rs.residuals.insert(0, BigFloat::zero());
            rs.root_errors.insert(0, BigFloat::zero());
        }
        return Ok(rs);
    }
    let deg = c.len() - 1;
    if deg == 0 {
        return Ok(RootSet {
            roots: Vec::new(),
            residuals: Vec::new(),
            root_errors: Vec::new(),
            precision_bits: prec,
        });
    }
    if deg == 1 {
        let root_exact = c[0].div(&c[1]).neg();
        let root = CBigFloat::from_crational(&root_exact, prec);
        let poly = GaussIntPoly::new(&c);
        let (er, ei, eden) = poly.eval(&root);
        let residual = residual_magnitude(&er, &ei, &eden, prec);
        return Ok(RootSet {
            roots: vec![root],
            residuals: vec![residual],
            root_errors: vec![BigFloat::zero()],
            precision_bits: prec,
        });
    }

    let poly = GaussIntPoly::new(&c);
    let deriv: Vec<CRational> = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, ck)| {
            let k = crate::exact::rat_int(k as i64);
            CRational::new(&ck.re * &k, &ck.im * &k)
        })
        .collect();
    let dpoly = GaussIntPoly::new(&deriv);

    // initial guesses: perturbed circle at the root bound
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r_log2 = root_bound_log2(&c);
    let mut z: Vec<CBigFloat> = (0..deg)
        .map(|i| {
            let radius = (r_log2 + 0.05 * rng.gen_range(-1.0..1.0)).exp2();
            let theta = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / deg as f64
                + 0.41
                + 0.05 * rng.gen_range(-1.0..1.0);
            CBigFloat::from_f64s(radius * theta.cos(), radius * theta.sin())
        })
        .collect();

    let stop_drop = prec as i64 - 6;
    let one = CBigFloat::from_f64s(1.0, 0.0);
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iterations {
        iterations += 1;
        let mut all_small = true;
        for i in 0..deg {
            let (pr, pi, pden) = poly.eval(&z[i]);
            if pr.is_zero() && pi.is_zero() {
                continue; // exactly on a root
            }
            let (dr, di, dden) = dpoly.eval(&z[i]);
            if dr.is_zero() && di.is_zero() {
                // stationary point: nudge deterministically and keep going
                let (re, im) = z[i].to_f64s();
                let bump = (r_log2 - 8.0).exp2() * (1.0 + rng.gen_range(0.0..1.0));
                z[i] = CBigFloat::from_f64s(re + bump, im + bump);
                all_small = false;
                continue;
            }
            let w = gaussian_ratio((&pr, &pi, &pden), (&dr, &di, &dden), prec);
            // Aberth repulsion sum over the other iterates
            let mut s = CBigFloat::zero();
            let mut collision = false;
            for j in 0..deg {
                if j == i {
                    continue;
                }
                let diff = z[i].sub(&z[j], prec);
                if diff.is_zero() {
                    collision = true;
                    break;
                }
                s = s.add(&one.div(&diff, prec), prec);
            }
            if collision {
                let (re, im) = z[i].to_f64s();
                let bump = (r_log2 - 10.0).exp2();
                z[i] = CBigFloat::from_f64s(re + bump, im - bump);
                all_small = false;
                continue;
            }
            let denom = one.sub(&w.mul(&s, prec), prec);
            let dz = if denom.is_zero() { w } else { w.div(&denom, prec) };
            z[i] = z[i].sub(&dz, prec);
            let z_top = z[i].msb_exp().unwrap_or(0);
            let dz_top = dz.msb_exp();
            if dz_top.is_some_and(|t| t > z_top - stop_drop) {
                all_small = false;
            }
        }
        if all_small {
            converged = true;
            break;
        }
    }

    if !converged {
        let max_residual = z
            .iter()
            .map(|zi| {
                let (pr, pi, pden) = poly.eval(zi);
                residual_magnitude(&pr, &pi, &pden, prec).to_f64()
            })
            .fold(0.0, f64::max);
        return Err(Error::NonConvergence { iterations, max_residual });
    }

    // Newton polish: quadratic cleanup at full precision
    let mut residuals = Vec::with_capacity(deg);
    let mut root_errors = Vec::with_capacity(deg);
    for zi in z.iter_mut() {
        let mut last_step = BigFloat::zero();
        for _ in 0..4 {
            let (pr, pi, pden) = poly.eval(zi);
            if pr.is_zero() && pi.is_zero() {
                last_step = BigFloat::zero();
                break;
            }
            let (dr, di, dden) = dpoly.eval(zi);
            if dr.is_zero() && di.is_zero() {
                break;
            }
            let w = gaussian_ratio((&pr, &pi, &pden), (&dr, &di, &dden), prec);
            *zi = zi.sub(&w, prec);
            last_step = w.abs(prec);
            let z_top = zi.msb_exp().unwrap_or(0);
            if w.msb_exp().is_none_or(|t| t <= z_top - (prec as i64 + 8)) {
                break;
            }
        }
        let (pr, pi, pden) = poly.eval(zi);
        residuals.push(residual_magnitude(&pr, &pi, &pden, prec));
        root_errors.push(last_step);
    }

    // deterministic output order
    let mut idx: Vec<usize> = (0..deg).collect();
    idx.sort_by(|&a, &b| {
        z[a].re
            .cmp_exact(&z[b].re)
            .then_with(|| z[a].im.cmp_exact(&z[b].im))
    });
    let roots = idx.iter().map(|&i| z[i].clone()).collect();
    let residuals = idx.iter().map(|&i| residuals[i].clone()).collect();
    let root_errors = idx.iter().map(|&i| root_errors[i].clone()).collect();

    Ok(RootSet { roots, residuals, root_errors, precision_bits: prec })
}

/// Roots of minimal modulus above `exclude_zero_tol`, with conjugate
/// partners and ties grouped together. A tie means the modulus matches the
/// minimum within `1e3` times the larger of the two roots' error estimates.
/// The result is ordered upper half-plane first.
pub fn smallest_modulus_roots(rs: &RootSet, exclude_zero_tol: f64) -> Result<Vec<CBigFloat>> {
    let prec = rs.precision_bits;
    let mut candidates: Vec<(usize, BigFloat)> = rs
        .roots
        .iter()
        .enumerate()
        .map(|(i, z)| (i, z.abs(prec)))
        .filter(|(_, m)| m.to_f64() > exclude_zero_tol)
        .collect();
    if candidates.is_empty() {
        return Err(Error::AllRootsExcluded { threshold: exclude_zero_tol });
    }
    candidates.sort_by(|a, b| a.1.cmp_exact(&b.1));
    let (min_idx, min_mod) = candidates[0].clone();
    let tie_scale = BigFloat::from_f64(1e3);
    let mut picked: Vec<usize> = Vec::new();
    for (i, m) in &candidates {
        let err_i = &rs.root_errors[*i];
        let err_min = &rs.root_errors[min_idx];
        let window = tie_scale.mul(if err_i.cmp_exact(err_min).is_ge() { err_i } else { err_min }, prec);
        if m.sub(&min_mod, prec).cmp_exact(&window).is_le() {
            picked.push(*i);
        }
    }
    picked.sort_by(|&a, &b| {
        rs.roots[b]
            .im
            .cmp_exact(&rs.roots[a].im)
            .then_with(|| rs.roots[a].re.cmp_exact(&rs.roots[b].re))
    });
    Ok(picked.into_iter().map(|i| rs.roots[i].clone()).collect())
}
