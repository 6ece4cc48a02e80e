//! The inverse map `(p, q) -> (a, m, s, d)`.
//!
//! `q` is scale free and fixes the shape through the unique root `t` of the
//! degree-ten polynomial in `(0, t0]`; `p` then fixes the size. Exactly
//! rational inputs get a Sturm certificate that the root is unique before it
//! is refined.

use std::fmt;

use num_traits::Zero;

use crate::error::{GionError, Result};
use crate::geometry::{self, constants, Scale, SegmentQuantities, BOUNDARY_SLACK};
use crate::ratpoly::{
    ratio, rational_from_f64, rational_to_f64, refine_root, sturm_count, RatPoly, Rational,
    Refinement,
};

pub const DEFAULT_TOL: f64 = 1e-12;

/// Roots found above `t0` by at most this much are clamped onto `t0`.
const ROOT_CLAMP_ALLOWANCE: f64 = 1e-9;

/// Rational cap just above `t0` for exact root counting.
pub fn sturm_cap() -> Rational {
    ratio(14, 25)
}

/// Rational just below `t0`, used when the cap interval holds a second root.
pub fn fallback_cap() -> Rational {
    ratio(5573, 10000)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeasibilityVerdict {
    Feasible,
    QTooSmall,
    QTooLarge,
    PNonpositive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Feasibility {
    pub verdict: FeasibilityVerdict,
    /// The bound that was violated, if any.
    pub bound: Option<f64>,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        self.verdict == FeasibilityVerdict::Feasible
    }
}

impl fmt::Display for Feasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            FeasibilityVerdict::Feasible => write!(f, "feasible"),
            FeasibilityVerdict::QTooSmall => write!(f, "q ≤ 2"),
            FeasibilityVerdict::QTooLarge => write!(f, "q > q₀≈2.3949722"),
            FeasibilityVerdict::PNonpositive => write!(f, "p ≤ 0"),
        }
    }
}

/// Feasible iff `p > 0` and `2 < q <= q0` (with [`BOUNDARY_SLACK`] above `q0`).
pub fn classify(p: f64, q: f64) -> Feasibility {
    let q0 = constants().q0;
    let (verdict, bound) = if !(p > 0.0) || !p.is_finite() {
        (FeasibilityVerdict::PNonpositive, Some(0.0))
    } else if !(q > 2.0) {
        (FeasibilityVerdict::QTooSmall, Some(2.0))
    } else if !(q <= q0 + BOUNDARY_SLACK) {
        (FeasibilityVerdict::QTooLarge, Some(q0))
    } else {
        (FeasibilityVerdict::Feasible, None)
    };
    Feasibility { verdict, bound }
}

/// The shape parameter, either a float or an exact rational.
#[derive(Debug, Clone, PartialEq)]
pub enum QInput {
    Float(f64),
    Exact(Rational),
}

impl QInput {
    pub fn to_f64(&self) -> f64 {
        match self {
            QInput::Float(q) => *q,
            QInput::Exact(q) => rational_to_f64(q),
        }
    }

    fn to_rational(&self) -> Result<Rational> {
        match self {
            QInput::Float(q) => rational_from_f64(*q)
                .ok_or_else(|| GionError::Domain(format!("q = {q} is not finite"))),
            QInput::Exact(q) => Ok(q.clone()),
        }
    }
}

/// How uniqueness of the root was established.
#[derive(Debug, Clone, PartialEq)]
pub enum RootCertification {
    /// Exact Sturm count of distinct roots in `(0, cap]`.
    Sturm { cap: Rational, count: usize },
    /// Sign change of the polynomial on the bracket; uniqueness rests on the
    /// monotonicity of `q(t)`.
    SignChange,
    /// `q` sits on the upper boundary and the root is `t0` itself.
    Boundary,
}

impl fmt::Display for RootCertification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootCertification::Sturm { cap, count } => {
                write!(f, "sturm count {count} on (0, {cap}]")
            }
            RootCertification::SignChange => write!(f, "sign change"),
            RootCertification::Boundary => write!(f, "boundary root t0"),
        }
    }
}

/// The root `t` for a given `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSolve {
    pub root: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
    pub certification: RootCertification,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GionSolution {
    pub a: f64,
    pub m: f64,
    pub s: f64,
    pub d: f64,
    pub t: f64,
    /// `(a + m + s + d) - p`.
    pub p_residual: f64,
    /// `(m/a + d/m + s/d) - q`.
    pub q_residual: f64,
    pub root_bracket: (f64, f64),
    pub iterations: usize,
    pub certification: RootCertification,
}

impl GionSolution {
    pub fn quantities(&self) -> SegmentQuantities {
        let t2 = self.t * self.t;
        let radius = 2.0 * (1.0 + t2).powi(2) * self.a / (16.0 * self.t * (1.0 - t2));
        SegmentQuantities {
            a: self.a,
            m: self.m,
            s: self.s,
            d: self.d,
            scale: Scale::Rescaled(radius),
        }
    }

    /// Checks the post-conditions every returned solution must satisfy.
    pub fn check_invariants(&self, p: f64, q: f64) -> Result<()> {
        let t0 = constants().t0;
        let fail = |what: String| Err(GionError::Consistency(what));
        if !(self.p_residual.abs() <= 1e-9 * p) {
            return fail(format!("p residual {} too large", self.p_residual));
        }
        if !(self.q_residual.abs() <= 1e-9 * q) {
            return fail(format!("q residual {} too large", self.q_residual));
        }
        if !((self.d / self.a - self.t).abs() <= 1e-10) {
            return fail(format!(
                "d/a = {} differs from t = {}",
                self.d / self.a,
                self.t
            ));
        }
        if !(self.t > 0.0 && self.t <= t0) {
            return fail(format!("t = {} outside (0, t0]", self.t));
        }
        Ok(())
    }
}

fn float_bracket_root(poly: &RatPoly, lo: f64, hi: f64, tol: f64) -> Result<Refinement> {
    refine_root(poly, lo, hi, tol)
}

/// Refines on `[lo, t0]` where the root may sit at `t0` itself.
fn root_up_to_t0(poly: &RatPoly, q: f64, lo: f64, tol: f64) -> Result<(Refinement, bool)> {
    let t0 = constants().t0;
    let at_t0 = rational_to_f64(&poly.eval(&rational_from_f64(t0).expect("t0 is finite")));
    if at_t0 >= 0.0 {
        // P(0) > 0, so a nonnegative value at t0 means the root is t0 up to
        // rounding, which only happens on the boundary q = q0.
        if (q - constants().q0).abs() <= 1e-9 {
            let r = Refinement {
                root: t0,
                bracket: (t0, t0),
                iterations: 0,
            };
            return Ok((r, true));
        }
        return Err(GionError::Consistency(format!(
            "P(t0) = {at_t0} is nonnegative for q = {q} away from q0"
        )));
    }
    Ok((float_bracket_root(poly, lo, t0, tol)?, false))
}

fn finish_root(refinement: Refinement, certification: RootCertification) -> Result<RootSolve> {
    let t0 = constants().t0;
    let mut root = refinement.root;
    if root > t0 {
        if root > t0 + ROOT_CLAMP_ALLOWANCE {
            return Err(GionError::Consistency(format!(
                "root {root} lies beyond t0 = {t0}"
            )));
        }
        root = t0;
    }
    if !(root > 0.0) {
        return Err(GionError::Consistency(format!(
            "root {root} is not positive"
        )));
    }
    Ok(RootSolve {
        root,
        bracket: refinement.bracket,
        iterations: refinement.iterations,
        certification,
    })
}

fn check_q(q: f64) -> Result<()> {
    let verdict = classify(1.0, q);
    if verdict.is_feasible() {
        Ok(())
    } else {
        Err(GionError::NoSolution(verdict))
    }
}

/// Root `t` in `(0, t0]` for a float `q`, bracketed by sign change.
pub fn solve_t(q: f64, tol: f64) -> Result<RootSolve> {
    check_q(q)?;
    let poly = geometry::gion_polynomial(&QInput::Float(q).to_rational()?);
    let (refinement, boundary) = root_up_to_t0(&poly, q, 0.0, tol)?;
    let cert = if boundary {
        RootCertification::Boundary
    } else {
        RootCertification::SignChange
    };
    finish_root(refinement, cert)
}

/// Root `t` in `(0, t0]` for an exact `q`, certified unique by Sturm counting.
pub fn solve_t_exact(q: &Rational, tol: f64) -> Result<RootSolve> {
    let qf = rational_to_f64(q);
    check_q(qf)?;
    let poly = geometry::gion_polynomial(q);
    let cap = sturm_cap();
    let count = match sturm_count(&poly, &Rational::zero(), &cap) {
        Ok(n) => Some(n),
        Err(GionError::EndpointRoot { .. }) => None,
        Err(e) => return Err(e),
    };
    if count == Some(1) {
        let refinement = float_bracket_root(&poly, 0.0, rational_to_f64(&cap), tol)?;
        return finish_root(refinement, RootCertification::Sturm { cap, count: 1 });
    }
    // A second root in (t0, cap] or a root on the cap itself: count below t0
    // and scan the sliver (fallback, t0] separately.
    let low_cap = fallback_cap();
    let low_count = sturm_count(&poly, &Rational::zero(), &low_cap)?;
    let low = rational_to_f64(&low_cap);
    match low_count {
        1 => {
            let refinement = float_bracket_root(&poly, 0.0, low, tol)?;
            finish_root(
                refinement,
                RootCertification::Sturm {
                    cap: low_cap,
                    count: 1,
                },
            )
        }
        0 => {
            let (refinement, boundary) = root_up_to_t0(&poly, qf, low, tol)?;
            let cert = if boundary {
                RootCertification::Boundary
            } else {
                RootCertification::SignChange
            };
            finish_root(refinement, cert)
        }
        n => Err(GionError::Consistency(format!(
            "{n} roots of P(t, {q}) in (0, {low_cap}]"
        ))),
    }
}

fn assemble(p: f64, q: f64, root: RootSolve) -> Result<GionSolution> {
    let scaled = geometry::quantities_from_t_scaled(root.root)?;
    let factor = p / scaled.p();
    let out = scaled.scaled_by(factor);
    let sol = GionSolution {
        a: out.a,
        m: out.m,
        s: out.s,
        d: out.d,
        t: root.root,
        p_residual: out.p() - p,
        q_residual: out.q() - q,
        root_bracket: root.bracket,
        iterations: root.iterations,
        certification: root.certification,
    };
    sol.check_invariants(p, q)?;
    Ok(sol)
}

fn feasible(p: f64, q: f64) -> Result<()> {
    let verdict = classify(p, q);
    if verdict.is_feasible() {
        Ok(())
    } else {
        Err(GionError::NoSolution(verdict))
    }
}

/// Solves for a float `q`.
pub fn solve(p: f64, q: f64, tol: f64) -> Result<GionSolution> {
    feasible(p, q)?;
    assemble(p, q, solve_t(q, tol)?)
}

/// Solves for an exact `q`, with a Sturm uniqueness certificate.
pub fn solve_exact(p: f64, q: &Rational, tol: f64) -> Result<GionSolution> {
    let qf = rational_to_f64(q);
    feasible(p, qf)?;
    assemble(p, qf, solve_t_exact(q, tol)?)
}

pub fn solve_input(p: f64, q: &QInput, tol: f64) -> Result<GionSolution> {
    match q {
        QInput::Float(q) => solve(p, *q, tol),
        QInput::Exact(q) => solve_exact(p, q, tol),
    }
}

/// `|t_solved - t|` after mapping `t` forward to `(p, q)` and solving back.
pub fn roundtrip_error(t: f64) -> Result<f64> {
    let (p, q) = geometry::pq_of_t(t)?;
    let sol = solve(p, q, DEFAULT_TOL)?;
    Ok((sol.t - t).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn classification() {
        assert_eq!(classify(1.0, 2.0).verdict, FeasibilityVerdict::QTooSmall);
        assert_eq!(classify(1.0, 2.5).verdict, FeasibilityVerdict::QTooLarge);
        assert_eq!(classify(1.0, 2.25).verdict, FeasibilityVerdict::Feasible);
        assert_eq!(
            classify(0.0, 2.25).verdict,
            FeasibilityVerdict::PNonpositive
        );
        assert_eq!(
            classify(1.0, f64::NAN).verdict,
            FeasibilityVerdict::QTooSmall
        );
        let q0 = constants().q0;
        assert!(classify(1.0, q0).is_feasible());
        assert!(classify(1.0, q0 + 0.5e-12).is_feasible());
        assert!(!classify(1.0, q0 + 1e-11).is_feasible());
        assert_eq!(classify(1.0, 2.5).bound, Some(q0));
    }

    #[test]
    fn right_angle_instance() {
        let sol = solve(4.5355339059, 2.1819805153, DEFAULT_TOL).unwrap();
        assert!((sol.a - 2.0).abs() < 1e-9);
        assert!((sol.m - 1.0).abs() < 1e-9);
        assert!((sol.s - SQRT_2 / 2.0).abs() < 1e-9);
        assert!((sol.d - (2.0 * SQRT_2 - 2.0)).abs() < 1e-9);
        assert!((sol.t - (SQRT_2 - 1.0)).abs() < 1e-9);

        let unit = solve(1.0, 2.1819805153, DEFAULT_TOL).unwrap();
        let k = 4.5355339059;
        assert!((unit.a - sol.a / k).abs() < 1e-12);
        assert!((unit.d - sol.d / k).abs() < 1e-12);
    }

    #[test]
    fn boundary_q() {
        let c = constants();
        let sol = solve(1.0, c.q0, DEFAULT_TOL).unwrap();
        assert!((sol.t - c.t0).abs() <= 1e-9);
    }

    #[test]
    fn exact_and_float_agree() {
        let exact = solve_exact(1.0, &ratio(9, 4), DEFAULT_TOL).unwrap();
        let float = solve(1.0, 2.25, DEFAULT_TOL).unwrap();
        assert!((exact.t - float.t).abs() < 1e-12);
        assert_eq!(
            exact.certification,
            RootCertification::Sturm {
                cap: sturm_cap(),
                count: 1
            }
        );
        assert_eq!(float.certification, RootCertification::SignChange);
    }

    #[test]
    fn infeasible_inputs_are_refused() {
        for (p, q) in [(1.0, 2.0), (1.0, 2.5), (-1.0, 2.2), (1.0, 1.0)] {
            assert!(matches!(
                solve(p, q, DEFAULT_TOL),
                Err(GionError::NoSolution(_))
            ));
        }
        assert!(solve_exact(1.0, &ratio(5, 2), DEFAULT_TOL).is_err());
        assert!(solve_exact(1.0, &ratio(2, 1), DEFAULT_TOL).is_err());
    }

    #[test]
    fn roundtrips() {
        assert!(roundtrip_error(0.3).unwrap() <= 1e-10);
        assert!(roundtrip_error(0.01).unwrap() <= 1e-10);
        assert!(roundtrip_error(constants().t0).unwrap() <= 1e-8);
    }

    #[test]
    fn residuals_are_recomputed() {
        let sol = solve(3.0, 2.3, DEFAULT_TOL).unwrap();
        let p = sol.a + sol.m + sol.s + sol.d;
        assert_eq!(sol.p_residual, p - 3.0);
        sol.check_invariants(3.0, 2.3).unwrap();
        let q = sol.quantities();
        assert!(q.arc_radius() > 0.0);
        assert!((q.q() - 2.3).abs() < 1e-10);
    }
}
