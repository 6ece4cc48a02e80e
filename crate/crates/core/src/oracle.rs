//! Independent checks.
//!
//! [`construct_from_phi`] rebuilds the unit-radius figure by bisection on the
//! raw incidence and tangency constraints and never touches the closed forms
//! in [`crate::geometry`]. [`certify_polynomial_identity`] verifies in exact
//! arithmetic that squaring away the radical in `q(t)` yields `32 t^2 P(t, q)`.
//! [`certify_monotonicity`] Sturm-counts the critical points of `q(t)`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{GionError, Result};
use crate::geometry::{self, constants, relative_difference, Scale, SegmentQuantities};
use num_traits::Zero;

use crate::ratpoly::{int, ratio, sturm_count, RatPoly, Rational};
use crate::solver::GionSolution;

pub const BISECTION_WIDTH: f64 = 1e-14;
pub const BISECTION_MAX_ITER: usize = 200;

/// Figure rebuilt from constraints at unit arc radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstructionResult {
    pub a: f64,
    pub m: f64,
    pub s: f64,
    pub d: f64,
    /// Polar angle (from the symmetry axis) of the square's corner on the arc.
    pub theta: f64,
    /// Angle at the arc centre between the axis and the small circle's centre.
    pub delta: f64,
    pub max_constraint_residual: f64,
}

impl ConstructionResult {
    pub fn quantities(&self) -> SegmentQuantities {
        SegmentQuantities {
            a: self.a,
            m: self.m,
            s: self.s,
            d: self.d,
            scale: Scale::UnitRadius,
        }
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(GionError::Bracketing { lo, hi });
    }
    for _ in 0..BISECTION_MAX_ITER {
        if hi - lo <= BISECTION_WIDTH {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Places the square and the circle inside the unit-radius segment of
/// half-angle `phi`.
///
/// Arc centre at the origin, chord on the line `y = cos(phi)`, symmetry axis
/// `x = 0`. The square stands on the chord with one side along the axis and
/// its free top corner `(sin(theta), cos(theta))` on the arc. The circle
/// touches the chord, the axis and the arc from inside.
pub fn construct_from_phi(phi: f64) -> Result<ConstructionResult> {
    let phi0 = constants().phi0;
    if !(phi > 0.0 && phi <= phi0 + geometry::BOUNDARY_SLACK) {
        return Err(GionError::Infeasible {
            name: "phi",
            value: phi,
            range: format!("(0, {phi0}]"),
        });
    }
    let phi = phi.min(phi0);
    let (sin_phi, cos_phi) = phi.sin_cos();
    let a = 2.0 * sin_phi;
    let m = 1.0 - cos_phi;

    // Corner on the arc, one side on the axis: sin(theta) = cos(theta) - cos(phi).
    let corner = |theta: f64| theta.sin() - theta.cos() + cos_phi;
    let theta = bisect(corner, 0.0, FRAC_PI_2)?;
    let s = theta.sin();

    // Centre (r, cos(phi) + r) at distance 1 - r from the origin.
    let tangency = |r: f64| r * r + (cos_phi + r).powi(2) - (1.0 - r).powi(2);
    let r = bisect(tangency, 0.0, 0.5)?;
    let d = 2.0 * r;
    let delta = (r / (1.0 - r)).asin();

    let residuals = [
        (s * s + (cos_phi + s).powi(2) - 1.0).abs(),
        tangency(r).abs(),
        ((1.0 - r) * delta.cos() - r - (1.0 - m)).abs(),
        (delta.sin() - r / (1.0 - r)).abs(),
    ];
    let max_constraint_residual = residuals.into_iter().fold(0.0, f64::max);
    Ok(ConstructionResult {
        a,
        m,
        s,
        d,
        theta,
        delta,
        max_constraint_residual,
    })
}

/// Left side of the squared radical equation,
/// `(16t^2(t^2 - 1)q + (-1 + 22t^2 + 16t^3 - 33t^4 + 16t^6))^2 - B(t)`.
pub fn squared_radical_form(q: &Rational) -> RatPoly {
    let q_term = RatPoly::from_integers(&[0, 0, -16, 0, 16]).scale(q);
    let rest = RatPoly::from_integers(&[-1, 0, 22, 16, -33, 0, 16]);
    let base = &q_term + &rest;
    &(&base * &base) - &geometry::radicand_poly()
}

/// First coefficient where the two sides disagree.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMismatch {
    pub q: Rational,
    pub degree: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub holds: bool,
    pub checked: Vec<Rational>,
    pub mismatch: Option<CoefficientMismatch>,
}

/// Sample points for the identity check. Both sides are quadratic in `q`, so
/// three distinct points decide it.
pub fn identity_sample_points() -> Vec<Rational> {
    vec![int(2), ratio(9, 4), ratio(5, 2), int(3), ratio(7, 2)]
}

pub fn check_identity_at(q: &Rational) -> Option<CoefficientMismatch> {
    let lhs = squared_radical_form(q);
    let rhs = &RatPoly::from_integers(&[0, 0, 32]) * &geometry::gion_polynomial(q);
    let n = lhs.coeffs().len().max(rhs.coeffs().len());
    (0..n).find_map(|i| {
        let (l, r) = (lhs.coeff(i), rhs.coeff(i));
        (l != r).then(|| CoefficientMismatch {
            q: q.clone(),
            degree: i,
            lhs: l,
            rhs: r,
        })
    })
}

pub fn certify_polynomial_identity() -> IdentityReport {
    let mut checked = Vec::new();
    for q in identity_sample_points() {
        checked.push(q.clone());
        if let Some(mismatch) = check_identity_at(&q) {
            return IdentityReport {
                holds: false,
                checked,
                mismatch: Some(mismatch),
            };
        }
    }
    IdentityReport {
        holds: true,
        checked,
        mismatch: None,
    }
}

/// Polynomial vanishing at every critical point of `q(t)`.
///
/// On the feasible branch `q = (sqrt(B) - R) / D` with `D = 16t^2(t^2 - 1)` and
/// `R = -1 + 22t^2 + 16t^3 - 33t^4 + 16t^6`. Setting `q'(t) = 0` and clearing
/// the radical gives `(B'D - 2BD')^2 - 4B(RD' - R'D)^2 = 0`. Squaring only
/// adds roots, so a root-free interval of this polynomial is one where `q`
/// is strictly monotone.
pub fn monotonicity_polynomial() -> RatPoly {
    let b = geometry::radicand_poly();
    let r = RatPoly::from_integers(&[-1, 0, 22, 16, -33, 0, 16]);
    let d = RatPoly::from_integers(&[0, 0, -16, 0, 16]);
    let (db, dr, dd) = (b.derivative(), r.derivative(), d.derivative());
    let lhs = &(&db * &d) - &(&b * &dd).scale(&int(2));
    let rhs = &(&r * &dd) - &(&dr * &d);
    &(&lhs * &lhs) - &(&b * &(&rhs * &rhs)).scale(&int(4))
}

/// Exact proof that `q(t)` is strictly increasing on `(0, cap]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityCertificate {
    pub polynomial: RatPoly,
    /// Multiplicity of the root at `t = 0`, divided out before counting.
    pub zero_root_multiplicity: usize,
    pub cap: Rational,
    /// Distinct roots of the deflated polynomial in `(0, cap]`.
    pub critical_points: usize,
    /// Whether `q` is larger at the top of the range than near zero.
    pub increasing: bool,
}

impl MonotonicityCertificate {
    pub fn holds(&self) -> bool {
        self.critical_points == 0 && self.increasing
    }
}

/// Sturm-counts the critical points of `q(t)` on `(0, 14/25]`.
pub fn certify_monotonicity() -> Result<MonotonicityCertificate> {
    let polynomial = monotonicity_polynomial();
    let (zero_root_multiplicity, deflated) = polynomial.deflate_zero_root();
    let cap = ratio(14, 25);
    let critical_points = sturm_count(&deflated, &Rational::zero(), &cap)?;
    let (_, q_low) = geometry::pq_of_t(1e-3)?;
    let (_, q_high) = geometry::pq_of_t(constants().t0)?;
    Ok(MonotonicityCertificate {
        polynomial,
        zero_root_multiplicity,
        cap,
        critical_points,
        increasing: q_low < q_high,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub p_recomputed: f64,
    pub q_recomputed: f64,
    /// Half-angle recovered from the chord and sagitta of the solution.
    pub phi: f64,
    /// Arc radius recovered from the chord and sagitta of the solution.
    pub arc_radius: f64,
    /// Constraint construction at `phi`, scaled to `arc_radius`.
    pub construction: Option<SegmentQuantities>,
    pub max_constraint_residual: f64,
    /// Largest relative deviation over the four lengths and both aggregates;
    /// infinite when no construction exists for the recovered angle.
    pub max_deviation: f64,
}

/// Cross-checks a solution against the constraint construction and the
/// defining aggregates.
pub fn verify_solution(sol: &GionSolution, p: f64, q: f64) -> VerificationReport {
    let found = sol.quantities();
    let p_recomputed = found.p();
    let q_recomputed = found.q();

    // A chord a with sagitta m lies on a circle of radius (a^2/4 + m^2) / 2m.
    let arc_radius = (0.25 * sol.a * sol.a + sol.m * sol.m) / (2.0 * sol.m);
    let phi = (0.5 * sol.a / arc_radius).atan2(1.0 - sol.m / arc_radius);

    let mut max_deviation =
        relative_difference(p_recomputed, p).max(relative_difference(q_recomputed, q));
    let (construction, max_constraint_residual) = match construct_from_phi(phi) {
        Ok(c) => {
            let scaled = c.quantities().scaled_by(arc_radius);
            max_deviation = max_deviation.max(scaled.max_relative_deviation(&found));
            (Some(scaled), c.max_constraint_residual)
        }
        Err(_) => {
            max_deviation = f64::INFINITY;
            (None, f64::NAN)
        }
    };
    if max_deviation.is_nan() {
        max_deviation = f64::INFINITY;
    }
    VerificationReport {
        p_recomputed,
        q_recomputed,
        phi,
        arc_radius,
        construction,
        max_constraint_residual,
        max_deviation,
    }
}
