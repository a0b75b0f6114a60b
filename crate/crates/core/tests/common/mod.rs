//! Shared property-suite drivers, callable with explicit case counts from
//! both the property tests and the acceptance gate.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use secular_core::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=24).prop_map(|(n, d)| exact::rat(n, d))
}

pub fn series_of_order(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(rational(), order + 1).prop_map(TruncatedSeries::new)
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

/// Commutativity, associativity, distributivity, and identity of the
/// truncated-series ring at a fixed order.
pub fn series_ring_laws(cases: u32) {
    let strategy = (0usize..=5).prop_flat_map(|order| {
        (
            series_of_order(order),
            series_of_order(order),
            series_of_order(order),
        )
    });
    runner(cases)
        .run(&strategy, |(a, b, c)| {
            let order = a.order();
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(
                a.add(&b).unwrap().add(&c).unwrap(),
                a.add(&b.add(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.mul_truncated(&b).unwrap(), b.mul_truncated(&a).unwrap());
            prop_assert_eq!(
                a.mul_truncated(&b).unwrap().mul_truncated(&c).unwrap(),
                a.mul_truncated(&b.mul_truncated(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.mul_truncated(&b.add(&c).unwrap()).unwrap(),
                a.mul_truncated(&b).unwrap().add(&a.mul_truncated(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.mul_truncated(&TruncatedSeries::one(order)).unwrap(), a);
            Ok(())
        })
        .unwrap();
}

/// The truncated product equals the leading coefficients of the exact
/// polynomial product.
pub fn truncation_consistency(cases: u32) {
    let strategy = (0usize..=6)
        .prop_flat_map(|order| (series_of_order(order), series_of_order(order)));
    runner(cases)
        .run(&strategy, |(a, b)| {
            let order = a.order();
            let truncated = a.mul_truncated(&b).unwrap();
            let exact = a.as_polynomial().mul(&b.as_polynomial());
            for j in 0..=order {
                prop_assert_eq!(truncated.coeff(j), &exact.coeff(j));
            }
            Ok(())
        })
        .unwrap();
}

/// Evaluation is a ring homomorphism up to the final roundings.
pub fn eval_homomorphism(cases: u32) {
    let prec = 128u32;
    let strategy = (0usize..=5).prop_flat_map(|order| {
        (
            series_of_order(order),
            series_of_order(order),
            -16i64..=16,
            -16i64..=16,
        )
    });
    runner(cases)
        .run(&strategy, |(a, b, zr, zi)| {
            let z = CBigFloat::from_f64s(zr as f64 / 8.0, zi as f64 / 8.0);
            let va = a.eval_complex(&z, prec);
            let vb = b.eval_complex(&z, prec);
            // exact product evaluated on the full polynomial ring
            let vab = a.as_polynomial().mul(&b.as_polynomial()).eval_complex(&z, prec);
            let err = vab.sub(&va.mul(&vb, prec), prec).abs(prec).to_f64();
            let scale = va.abs(prec).to_f64().max(1.0) * vb.abs(prec).to_f64().max(1.0);
            prop_assert!(err <= scale * 2f64.powi(-100), "err {err} vs scale {scale}");
            Ok(())
        })
        .unwrap();
}

fn small_int_poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-6i64..=6, 2..=max_deg + 1).prop_filter_map(
        "needs a nonzero leading coefficient",
        |cs| {
            let p = Polynomial::new(cs.iter().map(|&c| exact::rat_int(c)).collect());
            (p.degree().unwrap_or(0) >= 1).then_some(p)
        },
    )
}

/// `Res(f, g)` equals the leading-coefficient-weighted product of root
/// differences, checked numerically on λ-free polynomials.
pub fn resultant_root_product_oracle(cases: u32) {
    let strategy = (small_int_poly(3), small_int_poly(3));
    runner(cases)
        .run(&strategy, |(f, g)| {
            let fw = WPoly::new(f.coeffs().iter().map(|c| Polynomial::constant(c.clone())).collect());
            let gw = WPoly::new(g.coeffs().iter().map(|c| Polynomial::constant(c.clone())).collect());
            let res = poly_resultant(&fw, &gw).unwrap();
            let res_value = res.coeff(0).to_f64().unwrap();
            prop_assert!(res.degree().unwrap_or(0) == 0);

            let fr = find_roots(&f, 128).unwrap();
            let gr = find_roots(&g, 128).unwrap();
            let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
            prop_assert_eq!(fr.len(), m);
            prop_assert_eq!(gr.len(), n);
            let lf = f.leading_coeff().unwrap().to_f64().unwrap();
            let lg = g.leading_coeff().unwrap().to_f64().unwrap();
            let mut prod_re = lf.powi(n as i32) * lg.powi(m as i32);
            let mut prod_im = 0.0f64;
            for a in fr.roots() {
                for b in gr.roots() {
                    let (dr, di) = a.sub(b, 128).to_f64s();
                    let nr = prod_re * dr - prod_im * di;
                    let ni = prod_re * di + prod_im * dr;
                    prod_re = nr;
                    prod_im = ni;
                }
            }
            let scale = res_value.abs().max(prod_re.abs()).max(1.0);
            prop_assert!(
                (prod_re - res_value).abs() <= 1e-6 * scale && prod_im.abs() <= 1e-6 * scale,
                "resultant {res_value} vs root product {prod_re}+{prod_im}i"
            );
            Ok(())
        })
        .unwrap();
}

/// The secular polynomial does not depend on the order of the series.
pub fn ese_permutation_invariance(cases: u32) {
    let strategy = (0usize..=4).prop_flat_map(|order| {
        (
            series_of_order(order),
            series_of_order(order),
            series_of_order(order),
        )
    });
    runner(cases)
        .run(&strategy, |(a, b, c)| {
            let s1 = EigenSeries::new(1, a);
            let s2 = EigenSeries::new(2, b);
            let s3 = EigenSeries::new(3, c);
            let base = build_ese(&[s1.clone(), s2.clone(), s3.clone()]).unwrap();
            for perm in [
                vec![s2.clone(), s3.clone(), s1.clone()],
                vec![s3.clone(), s1.clone(), s2.clone()],
                vec![s2.clone(), s1.clone(), s3.clone()],
            ] {
                prop_assert_eq!(&build_ese(&perm).unwrap(), &base);
            }
            Ok(())
        })
        .unwrap();
}

fn generic_tridiagonal(dim: usize) -> impl Strategy<Value = ModelSpec> {
    let diag = prop::collection::vec((1i64..=9, 1i64..=6), dim);
    let sup = prop::collection::vec(rational(), dim - 1);
    let sub = prop::collection::vec(rational(), dim - 1);
    (diag, sup, sub).prop_map(|(steps, sup, sub)| {
        // strictly increasing diagonal from positive increments
        let mut acc = Rational::from_integer(0.into());
        let mut diag0 = Vec::with_capacity(steps.len());
        for (n, d) in steps {
            acc += exact::rat(n, d);
            diag0.push(acc.clone());
        }
        let bands = BTreeMap::from([(1, sup), (-1, sub)]);
        ModelSpec::Generic { diag0, bands }
    })
}

/// Series coefficients are unchanged when the matrix grows beyond the
/// minimal dimension.
pub fn series_m_stability(cases: u32) {
    let strategy = (1usize..=2, 1usize..=5).prop_flat_map(|(state, order)| {
        let dim = minimal_dim(state, order, 1) + 5;
        (Just(state), Just(order), generic_tridiagonal(dim))
    });
    runner(cases)
        .run(&strategy, |(state, order, model)| {
            let big = model.build(0).unwrap();
            let small = big.truncate(minimal_dim(state, order, 1)).unwrap();
            let a = rs_series(&big, state, order).unwrap();
            let b = rs_series(&small, state, order).unwrap();
            prop_assert_eq!(a.series(), b.series());
            Ok(())
        })
        .unwrap();
}

/// Multisets of roots of real-coefficient polynomials are closed under
/// conjugation, and the root count equals the degree.
pub fn root_conjugate_closure(cases: u32) {
    let prec = 128u32;
    let tol = 10f64.powf(-(decimal_digits(prec) as f64) / 2.0);
    runner(cases)
        .run(&small_int_poly(6), |p| {
            let rs = find_roots(&p, prec).unwrap();
            prop_assert_eq!(rs.len(), p.degree().unwrap());
            for z in rs.roots() {
                let (re, im) = z.to_f64s();
                if im.abs() <= tol {
                    continue;
                }
                let paired = rs.roots().iter().any(|w| {
                    let (wr, wi) = w.to_f64s();
                    (wr - re).abs() <= tol * re.abs().max(1.0)
                        && (wi + im).abs() <= tol * im.abs().max(1.0)
                });
                prop_assert!(paired, "no conjugate for {re}+{im}i in degree {}", rs.len());
            }
            Ok(())
        })
        .unwrap();
}

/// At any sample coupling, the sum and product of the secular `W`-roots
/// match the coefficient polynomials.
pub fn root_coefficient_consistency(cases: u32) {
    let prec = 160u32;
    let strategy = (1usize..=4).prop_flat_map(|order| {
        (
            series_of_order(order),
            series_of_order(order),
            -8i64..=8,
            1i64..=8,
        )
    });
    runner(cases)
        .run(&strategy, |(a, b, ln, ld)| {
            let s1 = EigenSeries::new(1, a);
            let s2 = EigenSeries::new(2, b);
            let ese = build_ese(&[s1, s2]).unwrap();
            let lam_exact = exact::rat(ln, ld);
            let lam = CBigFloat::new(BigFloat::from_rational(&lam_exact, prec), BigFloat::zero());
            let rs = ese_roots_in_w(&ese, &lam, prec).unwrap();
            prop_assert_eq!(rs.len(), 2);
            let zc = lam.to_crational();
            let p1 = CBigFloat::from_crational(&ese.p(1).eval_crational(&zc), prec);
            let p2 = CBigFloat::from_crational(&ese.p(2).eval_crational(&zc), prec);
            let sum = rs.roots()[0].add(&rs.roots()[1], prec);
            let prod = rs.roots()[0].mul(&rs.roots()[1], prec);
            let scale = p1.abs(prec).to_f64().abs().max(p2.abs(prec).to_f64().abs()).max(1.0);
            prop_assert!(sum.add(&p1, prec).abs(prec).to_f64() <= 1e-30 * scale);
            prop_assert!(prod.sub(&p2, prec).abs(prec).to_f64() <= 1e-30 * scale);
            Ok(())
        })
        .unwrap();
}

/// `p_j(0)` is the signed elementary symmetric polynomial of the
/// unperturbed eigenvalues.
pub fn ese_unperturbed_limit(cases: u32) {
    let strategy = (3usize..=5).prop_flat_map(generic_tridiagonal);
    runner(cases)
        .run(&strategy, |model| {
            let op = model.build(0).unwrap();
            let order = op.dim() - 3;
            let series: Vec<_> =
                (1..=2).map(|n| rs_series(&op, n, order).unwrap()).collect();
            let ese = build_ese(&series).unwrap();
            let e1 = &op.diag0()[0];
            let e2 = &op.diag0()[1];
            prop_assert_eq!(ese.p(1).coeff(0), -(e1 + e2));
            prop_assert_eq!(ese.p(2).coeff(0), e1 * e2);
            Ok(())
        })
        .unwrap();
}
