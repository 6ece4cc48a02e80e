use gion_core::ratpoly::{
    factor_degrees_mod_p, gcd, ratio, rational_from_f64, refine_root, sturm_count, RatPoly,
    Rational,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn int_poly(max_len: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(-9i64..=9, 1..=max_len)
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(|c| RatPoly::from_integers(&c))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=8).prop_map(|(n, d)| ratio(n, d))
}

fn sign(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

proptest! {
    #[test]
    fn sturm_counts_add_over_adjacent_intervals(
        f in int_poly(7),
        a in small_rational(),
        b in small_rational(),
        c in small_rational(),
    ) {
        let mut pts = [a, b, c];
        pts.sort();
        prop_assume!(pts[0] < pts[1] && pts[1] < pts[2]);
        prop_assume!(pts.iter().all(|x| !f.eval(x).is_zero()));
        let whole = sturm_count(&f, &pts[0], &pts[2]).unwrap();
        let left = sturm_count(&f, &pts[0], &pts[1]).unwrap();
        let right = sturm_count(&f, &pts[1], &pts[2]).unwrap();
        prop_assert_eq!(whole, left + right);
    }

    #[test]
    fn gcd_with_derivative_detects_squares(
        r in small_rational(),
        h in int_poly(4),
    ) {
        let square = RatPoly::from_roots(&[r.clone(), r]);
        let f = &square * &h;
        prop_assert!(!gcd(&f, &f.derivative()).unwrap().is_constant());
    }

    #[test]
    fn gcd_with_derivative_is_trivial_for_distinct_roots(
        roots in prop::collection::btree_set(-30i64..=30, 1..6),
    ) {
        let roots: Vec<Rational> = roots.into_iter().map(|r| ratio(r, 3)).collect();
        let f = RatPoly::from_roots(&roots);
        prop_assert!(gcd(&f, &f.derivative()).unwrap().is_constant());
    }

    #[test]
    fn mod_p_degrees_sum_to_degree(
        f in int_poly(9),
        p in prop::sample::select(vec![3u64, 5, 7, 11, 13, 17]),
    ) {
        let lc = f.leading_coeff().unwrap().numer().clone();
        prop_assume!(!(lc % p).is_zero());
        let degs = factor_degrees_mod_p(&f, p).unwrap();
        prop_assert_eq!(degs.iter().sum::<usize>(), f.degree().unwrap());
    }

    #[test]
    fn refined_root_brackets_a_sign_change(
        roots in prop::collection::btree_set(-20i64..=20, 1..5),
        pick in any::<prop::sample::Index>(),
    ) {
        // Roots spaced at least 1/7 apart; refine the chosen one.
        let roots: Vec<i64> = roots.into_iter().collect();
        let f = RatPoly::from_roots(&roots.iter().map(|&r| ratio(r, 7) + ratio(1, 13)).collect::<Vec<_>>());
        let target = roots[pick.index(roots.len())] as f64 / 7.0 + 1.0 / 13.0;
        let tol = 1e-10;
        let r = refine_root(&f, target - 0.05, target + 0.05, tol).unwrap();
        prop_assert!((r.root - target).abs() <= tol);
        let lo = rational_from_f64(r.root - tol).unwrap();
        let hi = rational_from_f64(r.root + tol).unwrap();
        prop_assert!(sign(&f.eval(&lo)) * sign(&f.eval(&hi)) <= 0);
    }
}

/// Sign changes of `f` on a uniform grid, counted with float Horner.
fn scan_sign_changes(coeffs: &[f64], lo: f64, hi: f64, step: f64) -> usize {
    let eval = |x: f64| coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c);
    let n = ((hi - lo) / step).ceil() as usize;
    let mut count = 0;
    let mut prev = eval(lo);
    for i in 1..=n {
        let x = (lo + i as f64 * step).min(hi);
        let v = eval(x);
        if v == 0.0 {
            count += 1;
            // Step past the exact zero so it is not counted twice.
            prev = eval(x + 0.5 * step);
            continue;
        }
        if prev != 0.0 && (prev < 0.0) != (v < 0.0) {
            count += 1;
        }
        prev = v;
    }
    count
}

#[test]
fn sturm_matches_dense_scan_on_random_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6107);
    let mut checked = 0;
    while checked < 100 {
        let degree = rng.gen_range(1..=6);
        let mut c: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-5..=5)).collect();
        if c[degree] == 0 {
            c[degree] = 1;
        }
        let f = RatPoly::from_integers(&c);
        if !gcd(&f, &f.derivative()).unwrap().is_constant() {
            continue;
        }
        // Cauchy bound, plus one so that the endpoints are never roots.
        let lead = c[degree].abs() as f64;
        let bound = 2.0
            + c[..degree]
                .iter()
                .map(|&x| x.abs() as f64 / lead)
                .fold(0.0, f64::max);
        let b = bound.ceil() as i64;
        let exact = sturm_count(&f, &ratio(-b, 1), &ratio(b, 1)).unwrap();
        let scanned = scan_sign_changes(&f.to_f64_coeffs(), -(b as f64), b as f64, 1e-4);
        assert_eq!(exact, scanned, "poly {f}");
        checked += 1;
    }
}
