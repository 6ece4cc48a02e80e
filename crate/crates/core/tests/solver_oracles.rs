use gion_core::geometry::{self, constants, gion_polynomial, pq_of_t};
use gion_core::oracle::{construct_from_phi, verify_solution};
use gion_core::ratpoly::{ratio, refine_root, sturm_count, RatPoly, Rational};
use gion_core::solver::{
    classify, roundtrip_error, solve, solve_exact, FeasibilityVerdict, DEFAULT_TOL,
};
use gion_core::GionError;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Plain bisection in float arithmetic, independent of the hybrid refiner.
fn bisection(poly: &RatPoly, mut lo: f64, mut hi: f64, width: f64) -> f64 {
    let c = poly.to_f64_coeffs();
    let f = |x: f64| c.iter().rev().fold(0.0, |acc, &k| acc * x + k);
    let flo = f(lo);
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) == (flo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Sign changes of `poly` at the rationals k/den for k = 1..=kmax, evaluated exactly.
fn exact_sign_changes(poly: &RatPoly, den: i64, kmax: i64) -> usize {
    let signs: Vec<bool> = (1..=kmax)
        .map(|k| poly.eval(&ratio(k, den)))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

#[test]
fn hybrid_refiner_agrees_with_plain_bisection() {
    let poly = gion_polynomial(&ratio(9, 4));
    let t0 = constants().t0;
    let hybrid = refine_root(&poly, 0.0, t0, 1e-12).unwrap();
    let plain = bisection(&poly, 0.0, t0, 1e-13);
    assert!(
        (hybrid.root - plain).abs() <= 1e-12,
        "{} vs {plain}",
        hybrid.root
    );
    // Independent value from a high-precision polynomial root finder.
    assert!((hybrid.root - 0.476293818781).abs() <= 1e-11);
}

#[test]
fn nine_quarters_has_one_root_below_the_cap() {
    let poly = gion_polynomial(&ratio(9, 4));
    assert_eq!(
        sturm_count(&poly, &Rational::zero(), &ratio(14, 25)).unwrap(),
        1
    );
    assert_eq!(exact_sign_changes(&poly, 10_000, 5_600), 1);
}

#[test]
fn q_of_three_has_no_feasible_root() {
    let poly = gion_polynomial(&ratio(3, 1));
    assert_eq!(
        sturm_count(&poly, &Rational::zero(), &ratio(14, 25)).unwrap(),
        0
    );
    assert_eq!(exact_sign_changes(&poly, 10_000, 5_600), 0);
}

#[test]
fn roots_are_unique_and_below_t0() {
    let t0 = constants().t0;
    let just_above_t0 = ratio(557_537, 1_000_000);
    for q in [ratio(201, 100), ratio(11, 5), ratio(9, 4), ratio(239, 100)] {
        let poly = gion_polynomial(&q);
        assert_eq!(
            sturm_count(&poly, &Rational::zero(), &ratio(14, 25)).unwrap(),
            1
        );
        assert_eq!(
            sturm_count(&poly, &just_above_t0, &ratio(14, 25)).unwrap(),
            0
        );
        let sol = solve_exact(1.0, &q, DEFAULT_TOL).unwrap();
        assert!(sol.t > 0.0 && sol.t <= t0 + 1e-12);
    }
}

#[test]
fn round_trip_over_the_whole_range() {
    let t0 = constants().t0;
    let worst = (1..=500)
        .map(|i| 1e-3 + (t0 - 1e-3) * i as f64 / 500.0)
        .map(|t| roundtrip_error(t).unwrap())
        .fold(0.0, f64::max);
    assert!(worst <= 1e-9, "{worst}");
}

#[test]
fn construction_matches_closed_forms() {
    let phi0 = constants().phi0;
    for i in 1..=100 {
        let phi = 0.05 + (phi0 - 0.05) * i as f64 / 100.0;
        let c = construct_from_phi(phi).unwrap();
        let g = geometry::quantities_from_phi(phi).unwrap();
        assert!(
            c.quantities().max_relative_deviation(&g) <= 1e-10,
            "phi = {phi}"
        );
        assert!(c.max_constraint_residual <= 1e-11);
        // r / (1 - r) < 1 keeps the tangency angle defined.
        assert!(c.d / 2.0 / (1.0 - c.d / 2.0) < 1.0);
    }
}

#[test]
fn boundary_solution_cross_validates() {
    let q0 = constants().q0;
    let sol = solve(2.0, q0, DEFAULT_TOL).unwrap();
    let report = verify_solution(&sol, 2.0, q0);
    assert!(report.max_deviation <= 1e-8, "{report:?}");
}

#[test]
fn boundary_exact_rational_near_q0() {
    // Largest "nice" rational below q0: the root sits in (5573/10000, t0].
    let q = ratio(23_949_722, 10_000_000);
    let sol = solve_exact(1.0, &q, DEFAULT_TOL).unwrap();
    assert!(sol.t <= constants().t0 && sol.t > 0.5573);
}

proptest! {
    #[test]
    fn every_solution_honours_its_contract(p in 1e-3f64..1e3, q in 2.0001f64..2.3949) {
        let sol = solve(p, q, DEFAULT_TOL).unwrap();
        sol.check_invariants(p, q).unwrap();
        // The solved t satisfies the radical form of q(t), not just P.
        let (_, q_back) = pq_of_t(sol.t).unwrap();
        prop_assert!((q_back - q).abs() <= 1e-9);
    }

    #[test]
    fn infeasible_inputs_never_solve(p in -10f64..10.0, q in prop_oneof![0.0f64..2.0, 2.396f64..10.0]) {
        let verdict = classify(p, q);
        prop_assert!(!verdict.is_feasible());
        let is_no_solution = matches!(solve(p, q, DEFAULT_TOL), Err(GionError::NoSolution(_)));
        prop_assert!(is_no_solution);
    }

    #[test]
    fn feasible_inputs_never_raise_feasibility_errors(p in 1e-6f64..1e6, t in 1e-4f64..0.5575) {
        let (_, q) = pq_of_t(t).unwrap();
        prop_assert_eq!(classify(p, q).verdict, FeasibilityVerdict::Feasible);
        prop_assert!(solve(p, q, DEFAULT_TOL).is_ok());
    }
}

#[test]
fn exact_monotonicity_agrees_with_the_grid() {
    let cert = gion_core::oracle::certify_monotonicity().unwrap();
    assert!(cert.holds(), "{cert:?}");
    let t0 = constants().t0;
    let qs: Vec<f64> = (1..=2000)
        .map(|i| pq_of_t(t0 * i as f64 / 2000.0).unwrap().1)
        .collect();
    assert!(qs.windows(2).all(|w| w[1] > w[0]));
}
