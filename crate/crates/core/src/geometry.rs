//! Forward parametrizations of the figure.
//!
//! The unit-radius picture is described by any one of five coupled
//! parameters: the half-angle `phi` of the segment, the small circle radius
//! `r`, the auxiliary `x = sqrt(1 - 2r)`, the rational-parametrization
//! variable `t = d / a`, and the square's corner angle `theta`. Each entry
//! point below maps one of them to the four lengths.
//!
//! Expressions that would cancel catastrophically near the degenerate end
//! (`t -> 0`) are rewritten; in particular `sqrt(B) - 1` for the recurring
//! radicand `B = 1 + 20t^2 - 26t^4 + 20t^6 + t^8` is evaluated as
//! `(B - 1) / (sqrt(B) + 1)`.

use std::f64::consts::FRAC_PI_2;
use std::sync::LazyLock;

use num_traits::{One, Zero};

use crate::error::{GionError, Result};
use crate::ratpoly::{int, RatPoly, Rational};
use crate::solver;

/// Absolute slack applied at the closed end of every feasible range.
pub const BOUNDARY_SLACK: f64 = 1e-12;

/// Radicands closer than this to zero from below are treated as zero.
pub const RADICAND_CLAMP: f64 = 1e-14;

/// Closed-form limits of the feasible region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    /// Largest attainable `q`, reached at `t = t0`.
    pub q0: f64,
    /// Largest admissible `t`.
    pub t0: f64,
    /// Largest small-circle radius at unit arc radius.
    pub r0: f64,
    /// Smallest admissible `x`.
    pub x0: f64,
    /// Largest half-angle; beyond it the square no longer fits.
    pub phi0: f64,
}

static CONSTANTS: LazyLock<Constants> = LazyLock::new(|| {
    let sqrt5 = 5f64.sqrt();
    let q0 = -3.0 + 1.5 * sqrt5 + 0.5 * (0.5 * (125.0 - 41.0 * sqrt5)).sqrt();
    let t0 = 0.5 * (1.0 - sqrt5 + (2.0 * (5.0 - sqrt5)).sqrt());
    let r0 = -1.0 + 1.0 / sqrt5 + (2.0 - 2.0 / sqrt5).sqrt();
    let x0 = (1.0 - 2.0 * r0).sqrt();
    let phi0 = FRAC_PI_2 + 0.5f64.atan();
    Constants {
        q0,
        t0,
        r0,
        x0,
        phi0,
    }
});

pub fn constants() -> Constants {
    *CONSTANTS
}

/// Which arc radius a [`SegmentQuantities`] tuple was computed for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scale {
    UnitRadius,
    /// Arc radius `2(1 + t^2)^2`, which clears every denominator in `t`.
    RadiusTwoOnePlusTSqSquared,
    /// Arbitrary arc radius.
    Rescaled(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentQuantities {
    /// Chord.
    pub a: f64,
    /// Sagitta, from the chord midpoint to the arc.
    pub m: f64,
    /// Side of the square.
    pub s: f64,
    /// Diameter of the inscribed circle.
    pub d: f64,
    pub scale: Scale,
}

impl SegmentQuantities {
    pub fn p(&self) -> f64 {
        self.a + self.m + self.s + self.d
    }

    pub fn q(&self) -> f64 {
        self.m / self.a + self.d / self.m + self.s / self.d
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.a, self.m, self.s, self.d]
    }

    /// Arc radius of the figure these lengths belong to.
    pub fn arc_radius(&self) -> f64 {
        match self.scale {
            Scale::UnitRadius => 1.0,
            Scale::RadiusTwoOnePlusTSqSquared => {
                let t = self.d / self.a;
                2.0 * (1.0 + t * t).powi(2)
            }
            Scale::Rescaled(r) => r,
        }
    }

    pub fn scaled_by(&self, factor: f64) -> Self {
        Self {
            a: self.a * factor,
            m: self.m * factor,
            s: self.s * factor,
            d: self.d * factor,
            scale: Scale::Rescaled(self.arc_radius() * factor),
        }
    }

    /// Largest componentwise relative difference.
    pub fn max_relative_deviation(&self, other: &Self) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(&x, y)| relative_difference(x, y))
            .fold(0.0, f64::max)
    }

    /// Largest componentwise difference relative to the largest length of
    /// `self`.
    pub fn max_normwise_deviation(&self, other: &Self) -> f64 {
        let norm = self.as_array().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let diff = self
            .as_array()
            .iter()
            .zip(other.as_array())
            .fold(0.0f64, |m, (&x, y)| m.max((x - y).abs()));
        if norm == 0.0 {
            diff
        } else {
            diff / norm
        }
    }
}

pub(crate) fn relative_difference(x: f64, y: f64) -> f64 {
    let scale = x.abs().max(y.abs());
    if scale == 0.0 {
        0.0
    } else {
        (x - y).abs() / scale
    }
}

/// Every parameter of the unit-radius figure at one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPoint {
    pub phi: f64,
    pub r: f64,
    pub x: f64,
    pub t: f64,
    pub theta: f64,
    pub delta: f64,
}

fn sqrt_guarded(value: f64, context: &'static str) -> Result<f64> {
    if value >= 0.0 {
        Ok(value.sqrt())
    } else if value > -RADICAND_CLAMP {
        Ok(0.0)
    } else {
        Err(GionError::NegativeRadicand { context, value })
    }
}

fn out_of_range(name: &'static str, value: f64, range: String) -> GionError {
    GionError::Infeasible { name, value, range }
}

fn check_t(t: f64) -> Result<f64> {
    let t0 = constants().t0;
    if t > 0.0 && t <= t0 + BOUNDARY_SLACK {
        Ok(t.min(t0))
    } else {
        Err(out_of_range("t", t, format!("(0, {t0}]")))
    }
}

fn check_r(r: f64) -> Result<f64> {
    let r0 = constants().r0;
    if r > 0.0 && r <= r0 + BOUNDARY_SLACK {
        Ok(r.min(r0))
    } else {
        Err(out_of_range("r", r, format!("(0, {r0}]")))
    }
}

fn check_x(x: f64) -> Result<f64> {
    let x0 = constants().x0;
    if x >= x0 - BOUNDARY_SLACK && x < 1.0 {
        Ok(x.max(x0))
    } else {
        Err(out_of_range("x", x, format!("[{x0}, 1)")))
    }
}

fn check_phi(phi: f64) -> Result<f64> {
    let phi0 = constants().phi0;
    if phi > 0.0 && phi <= phi0 + BOUNDARY_SLACK {
        Ok(phi.min(phi0))
    } else {
        Err(out_of_range("phi", phi, format!("(0, {phi0}]")))
    }
}

/// `(B - 1) / t^2` for `B = 1 + 20t^2 - 26t^4 + 20t^6 + t^8`, Horner in `t^2`.
fn radicand_excess_over_t2(t2: f64) -> f64 {
    ((t2 + 20.0) * t2 - 26.0) * t2 + 20.0
}

/// `sqrt(B) - 1` without cancellation.
fn sqrt_radicand_minus_one(t: f64) -> f64 {
    let t2 = t * t;
    let excess = t2 * radicand_excess_over_t2(t2);
    excess / ((1.0 + excess).sqrt() + 1.0)
}

/// Square side at arc radius `2(1 + t^2)^2`: `-1 + 6t^2 - t^4 + sqrt(B)`.
fn scaled_square_side(t: f64) -> f64 {
    let t2 = t * t;
    6.0 * t2 - t2 * t2 + sqrt_radicand_minus_one(t)
}

impl ParamPoint {
    pub fn from_t(t: f64) -> Result<Self> {
        let t = check_t(t)?;
        let t2 = t * t;
        let w = 1.0 + t2;
        let x = (1.0 - 3.0 * t2) / w;
        let r = 4.0 * t2 * (1.0 - t2) / (w * w);
        let sin_phi = 4.0 * t * (1.0 - t2) / (w * w);
        let cos_phi = x - r;
        let phi = sin_phi.atan2(cos_phi);
        let s = scaled_square_side(t) / (2.0 * w * w);
        let theta = s.atan2(cos_phi + s);
        let delta = (r / (1.0 - r)).asin();
        Ok(Self {
            phi,
            r,
            x,
            t,
            theta,
            delta,
        })
    }

    pub fn from_x(x: f64) -> Result<Self> {
        let x = check_x(x)?;
        let t = ((1.0 - x) / (3.0 + x)).sqrt();
        Ok(Self {
            x,
            ..Self::from_t(t)?
        })
    }

    pub fn from_r(r: f64) -> Result<Self> {
        let r = check_r(r)?;
        let x = (1.0 - 2.0 * r).sqrt();
        let one_minus_x = 2.0 * r / (1.0 + x);
        let t = (one_minus_x / (3.0 + x)).sqrt();
        Ok(Self {
            r,
            x,
            ..Self::from_t(t)?
        })
    }

    pub fn from_phi(phi: f64) -> Result<Self> {
        let phi = check_phi(phi)?;
        let r = radius_from_phi(phi)?;
        let t = r / phi.sin();
        Ok(Self {
            phi,
            r,
            ..Self::from_t(t)?
        })
    }
}

/// Inverts `cos(phi) = -r + sqrt(1 - 2r)` on the branch `r < 1/2`.
///
/// With `u = sqrt(1 - 2r)` the relation is `u^2 + 2u - (1 + 2cos(phi)) = 0`,
/// whose positive root is `u = -1 + sqrt(2 + 2cos(phi))`, and `r = (1 - u^2)/2`.
fn radius_from_phi(phi: f64) -> Result<f64> {
    let c = phi.cos();
    let one_minus_c = 2.0 * (0.5 * phi).sin().powi(2);
    let root = sqrt_guarded(2.0 + 2.0 * c, "2 + 2cos(phi)")?;
    let u = root - 1.0;
    // 1 - u = 2 - sqrt(2 + 2c) = 2(1 - c) / (2 + sqrt(2 + 2c))
    let one_minus_u = 2.0 * one_minus_c / (2.0 + root);
    Ok(0.5 * one_minus_u * (1.0 + u))
}

/// Lengths at unit arc radius from the half-angle.
pub fn quantities_from_phi(phi: f64) -> Result<SegmentQuantities> {
    let phi = check_phi(phi)?;
    let (sin_phi, cos_phi) = phi.sin_cos();
    let m = 2.0 * (0.5 * phi).sin().powi(2);
    let a = 2.0 * sin_phi;
    // sin(theta) = sqrt(8 - 4cos^2)/4 - cos/2 = sin^2 / (sqrt(1 + sin^2) + cos)
    let sin2 = sin_phi * sin_phi;
    let s = if cos_phi >= 0.0 {
        sin2 / ((1.0 + sin2).sqrt() + cos_phi)
    } else {
        0.25 * sqrt_guarded(8.0 - 4.0 * cos_phi * cos_phi, "8 - 4cos^2(phi)")? - 0.5 * cos_phi
    };
    let d = 2.0 * radius_from_phi(phi)?;
    Ok(SegmentQuantities {
        a,
        m,
        s,
        d,
        scale: Scale::UnitRadius,
    })
}

/// Lengths at unit arc radius from the small circle's radius.
pub fn quantities_from_r(r: f64) -> Result<SegmentQuantities> {
    let r = check_r(r)?;
    let w = sqrt_guarded(1.0 - 2.0 * r, "1 - 2r")?;
    let d = 2.0 * r;
    // m = 1 + r - w, with 1 - w = 2r / (1 + w)
    let m = r + 2.0 * r / (1.0 + w);
    let a = 2.0 * sqrt_guarded(2.0 * r - r * r + 2.0 * r * w, "sin^2(phi)")?;
    // s = (r - w + sqrt(A)) / 2 with sqrt(A) - w = (A - w^2) / (sqrt(A) + w)
    let big_a = sqrt_guarded(1.0 + 2.0 * r - r * r + 2.0 * r * w, "1 + 2r - r^2 + 2rw")?;
    let s = 0.5 * (r + (4.0 * r - r * r + 2.0 * r * w) / (big_a + w));
    Ok(SegmentQuantities {
        a,
        m,
        s,
        d,
        scale: Scale::UnitRadius,
    })
}

/// Lengths at unit arc radius from `x = sqrt(1 - 2r)`.
pub fn quantities_from_x(x: f64) -> Result<SegmentQuantities> {
    let x = check_x(x)?;
    let one_minus_x = 1.0 - x;
    let d = one_minus_x * (1.0 + x);
    // 3 - 2x - x^2 = (1 - x)(3 + x)
    let y2 = one_minus_x * (3.0 + x);
    let m = 0.5 * y2;
    let a = (1.0 + x) * sqrt_guarded(y2, "3 - 2x - x^2")?;
    let x2 = x * x;
    let inner = sqrt_guarded(
        (((-x - 4.0) * x - 2.0) * x + 4.0) * x + 7.0,
        "7 + 4x - 2x^2 - 4x^3 - x^4",
    )?;
    // lead + inner = (inner^2 - lead^2) / (inner - lead), and the difference
    // of squares factors as 2(1 - x)(1 + x)^2(3 + x).
    let lead = 1.0 - 2.0 * x - x2;
    let s = one_minus_x * (1.0 + x).powi(2) * (3.0 + x) / (2.0 * (inner - lead));
    Ok(SegmentQuantities {
        a,
        m,
        s,
        d,
        scale: Scale::UnitRadius,
    })
}

/// Lengths at unit arc radius from `t = d / a`.
pub fn quantities_from_t_unit(t: f64) -> Result<SegmentQuantities> {
    let t = check_t(t)?;
    let t2 = t * t;
    let w = 1.0 + t2;
    let den = w * w;
    Ok(SegmentQuantities {
        a: 8.0 * t * (1.0 - t2) / den,
        m: 8.0 * t2 / den,
        s: scaled_square_side(t) / (2.0 * den),
        d: 8.0 * t2 * (1.0 - t2) / den,
        scale: Scale::UnitRadius,
    })
}

/// Lengths at arc radius `2(1 + t^2)^2`, where all but `s` are polynomials.
pub fn quantities_from_t_scaled(t: f64) -> Result<SegmentQuantities> {
    let t = check_t(t)?;
    let t2 = t * t;
    Ok(SegmentQuantities {
        a: 16.0 * t * (1.0 - t2),
        m: 16.0 * t2,
        s: scaled_square_side(t),
        d: 16.0 * t2 * (1.0 - t2),
        scale: Scale::RadiusTwoOnePlusTSqSquared,
    })
}

/// Exact form of [`quantities_from_t_scaled`] at a rational `t`. The square
/// side is `s_rational + sqrt(s_radicand)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactScaledQuantities {
    pub a: Rational,
    pub m: Rational,
    pub d: Rational,
    pub s_rational: Rational,
    pub s_radicand: Rational,
}

pub fn quantities_from_t_scaled_exact(t: &Rational) -> ExactScaledQuantities {
    let one = Rational::one();
    let t2 = t * t;
    let t4 = &t2 * &t2;
    let sixteen = int(16);
    ExactScaledQuantities {
        a: &sixteen * t * (&one - &t2),
        m: &sixteen * &t2,
        d: &sixteen * &t2 * (&one - &t2),
        s_rational: -&one + int(6) * &t2 - &t4,
        s_radicand: radicand_poly().eval(t),
    }
}

/// `B(t) = 1 + 20t^2 - 26t^4 + 20t^6 + t^8`.
pub fn radicand_poly() -> RatPoly {
    RatPoly::from_integers(&[1, 0, 20, 0, -26, 0, 20, 0, 1])
}

/// Aggregates `(p, q)` of the scaled figure at parameter `t`.
pub fn pq_of_t(t: f64) -> Result<(f64, f64)> {
    let t = check_t(t)?;
    let t2 = t * t;
    let root_minus_one = sqrt_radicand_minus_one(t);
    let p = 16.0 * t + 38.0 * t2 - 16.0 * t2 * t - 17.0 * t2 * t2 + root_minus_one;
    // numerator / t^2, with (sqrt(B) - 1) / t^2 = excess / (sqrt(B) + 1)
    let excess = radicand_excess_over_t2(t2);
    let tail = excess / (root_minus_one + 2.0);
    let num = 22.0 + 16.0 * t - 33.0 * t2 + 16.0 * t2 * t2 + tail;
    let q = num / (16.0 * (1.0 - t2));
    Ok((p, q))
}

/// The degree-ten polynomial in `t` whose unique root in `(0, t0]` solves the
/// problem for the given `q`.
pub fn gion_polynomial(q: &Rational) -> RatPoly {
    let q2 = q * q;
    let i = |n: i64| int(n);
    RatPoly::new(vec![
        q - i(2),
        i(-1),
        i(8) * &q2 - i(23) * q + i(18),
        -(i(16) * q - i(22)),
        -(i(16) * &q2 - i(55) * q + i(39)),
        i(16) * q - i(33),
        i(8) * &q2 - i(49) * q + i(56),
        i(16),
        i(16) * q - i(33),
        Rational::zero(),
        i(8),
    ])
}

/// Half-angle of the segment that realises a given `q`.
pub fn phi_of_q(q: f64) -> Result<f64> {
    let t = solver::solve_t(q, solver::DEFAULT_TOL)?;
    Ok(ParamPoint::from_t(t.root)?.phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::ratio;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol
    }

    #[test]
    fn constants_match_printed_values() {
        let c = constants();
        assert!(close(c.q0, 2.3949722, 1e-7), "{}", c.q0);
        assert!(close(c.t0, 0.557537, 1e-6), "{}", c.t0);
        assert!(close(c.x0, 0.0514622, 1e-7), "{}", c.x0);
        assert!(close(c.phi0, 2.0344439, 1e-7), "{}", c.phi0);
        assert!(c.r0 < 0.5);
        // t0^2 = (1 - x0) / (3 + x0)
        assert!(close(c.t0 * c.t0, (1.0 - c.x0) / (3.0 + c.x0), 1e-14));
        // cos(phi0) = -r0 + x0
        assert!(close(c.phi0.cos(), c.x0 - c.r0, 1e-14));
    }

    #[test]
    fn right_angle_segment() {
        let q = quantities_from_phi(FRAC_PI_2).unwrap();
        assert!(close(q.a, 2.0, 1e-15));
        assert!(close(q.m, 1.0, 1e-15));
        assert!(close(q.s, SQRT_2 / 2.0, 1e-15));
        assert!(close(q.d, 2.0 * SQRT_2 - 2.0, 1e-15));
        let t = SQRT_2 - 1.0;
        assert!(quantities_from_r(t).unwrap().max_relative_deviation(&q) < 1e-14);
        assert!(quantities_from_x(t).unwrap().max_relative_deviation(&q) < 1e-14);
        assert!(
            quantities_from_t_unit(t)
                .unwrap()
                .max_relative_deviation(&q)
                < 1e-12
        );
    }

    #[test]
    fn boundary_instances_agree() {
        let c = constants();
        let by_phi = quantities_from_phi(c.phi0).unwrap();
        let by_r = quantities_from_r(c.r0).unwrap();
        let by_x = quantities_from_x(c.x0).unwrap();
        let by_t = quantities_from_t_unit(c.t0).unwrap();
        assert!(by_r.max_relative_deviation(&by_phi) < 1e-12);
        assert!(by_x.max_relative_deviation(&by_r) < 1e-12);
        assert!(by_t.max_relative_deviation(&by_x) < 1e-12);
    }

    #[test]
    fn extreme_square_touches_both_arc_points() {
        // At phi0 the square's base reaches the end of the chord: s = a/2.
        let c = constants();
        let q = quantities_from_phi(c.phi0).unwrap();
        assert!(close(q.s, 2.0 / 5f64.sqrt(), 1e-14));
        assert!(close(q.s, c.phi0.sin(), 1e-14));
    }

    #[test]
    fn degenerate_limits_vanish() {
        for q in [
            quantities_from_phi(1e-9).unwrap(),
            quantities_from_r(1e-14).unwrap(),
            quantities_from_x(1.0 - 1e-15).unwrap(),
            quantities_from_t_unit(1e-8).unwrap(),
            quantities_from_t_scaled(1e-8).unwrap(),
        ] {
            assert!(
                q.as_array().iter().all(|v| v.abs() < 1e-6 && *v >= 0.0),
                "{q:?}"
            );
        }
    }

    #[test]
    fn out_of_range_inputs() {
        let c = constants();
        assert!(quantities_from_phi(0.0).is_err());
        assert!(quantities_from_phi(c.phi0 + 1e-9).is_err());
        assert!(quantities_from_phi(c.phi0 + 1e-13).is_ok());
        assert!(quantities_from_r(0.6).is_err());
        assert!(quantities_from_r(-0.1).is_err());
        assert!(quantities_from_x(1.0).is_err());
        assert!(quantities_from_x(0.05).is_err());
        assert!(quantities_from_t_unit(0.0).is_err());
        assert!(quantities_from_t_scaled(c.t0 + 1e-6).is_err());
        assert!(pq_of_t(0.6).is_err());
        assert!(matches!(
            quantities_from_r(0.6),
            Err(GionError::Infeasible { name: "r", .. })
        ));
    }

    #[test]
    fn radicand_guard() {
        assert_eq!(sqrt_guarded(-1e-15, "test").unwrap(), 0.0);
        assert!(sqrt_guarded(-1e-10, "test").is_err());
    }

    #[test]
    fn scaled_at_one_half() {
        let q = quantities_from_t_scaled(0.5).unwrap();
        assert_eq!((q.m, q.d, q.a), (4.0, 3.0, 6.0));
        // B(1/2) = (1536 - 416 + 80 + 1) / 256
        let expected_s = 7.0 / 16.0 + (1201.0f64 / 256.0).sqrt();
        assert!(close(q.s, expected_s, 1e-14));
        let unit = quantities_from_t_unit(0.5).unwrap();
        let factor = 2.0 * (1.25f64).powi(2);
        assert!(unit.scaled_by(factor).max_relative_deviation(&q) < 1e-15);

        let exact = quantities_from_t_scaled_exact(&ratio(1, 2));
        assert_eq!(exact.s_rational, ratio(7, 16));
        assert_eq!(exact.s_radicand, ratio(1201, 256));
        assert_eq!(exact.d / exact.a, ratio(1, 2));
    }

    #[test]
    fn aggregates_match_closed_forms() {
        for &t in &[1e-3, 0.1, 0.3, 0.5, constants().t0] {
            let q = quantities_from_t_scaled(t).unwrap();
            let (p, qq) = pq_of_t(t).unwrap();
            assert!(relative_difference(q.p(), p) < 1e-13, "t={t}");
            assert!(relative_difference(q.q(), qq) < 1e-13, "t={t}");
        }
    }

    #[test]
    fn q_at_the_ends() {
        let c = constants();
        assert!(close(pq_of_t(c.t0).unwrap().1, c.q0, 1e-12));
        assert!(close(pq_of_t(1e-9).unwrap().1, 2.0, 1e-8));
    }

    #[test]
    fn right_angle_aggregates() {
        let t = SQRT_2 - 1.0;
        let (p, q) = pq_of_t(t).unwrap();
        let expected_q = 0.5 + (2.0 * SQRT_2 - 2.0) + (SQRT_2 / 2.0) / (2.0 * SQRT_2 - 2.0);
        assert!(close(q, expected_q, 1e-13));
        assert!(close(q, 2.181981, 1e-6));
        let scale = 2.0 * (1.0 + t * t).powi(2);
        assert!(relative_difference(p, scale * (3.0 + SQRT_2 / 2.0 + 2.0 * SQRT_2 - 2.0)) < 1e-14);
    }

    #[test]
    fn polynomial_at_nine_quarters() {
        let p = gion_polynomial(&ratio(9, 4));
        let expected: Vec<Rational> = [
            ratio(1, 4),
            ratio(-1, 1),
            ratio(27, 4),
            ratio(-14, 1),
            ratio(15, 4),
            ratio(3, 1),
            ratio(-55, 4),
            ratio(16, 1),
            ratio(3, 1),
            ratio(0, 1),
            ratio(8, 1),
        ]
        .into();
        assert_eq!(p.coeffs(), expected.as_slice());
        assert_eq!(p.eval(&Rational::zero()), ratio(1, 4));
        assert_eq!(gion_polynomial(&int(2)).eval(&Rational::zero()), int(0));
    }

    #[test]
    fn param_point_relations() {
        for &t in &[1e-3, 0.2, SQRT_2 - 1.0, constants().t0] {
            let pt = ParamPoint::from_t(t).unwrap();
            assert!(close(pt.x * pt.x, 1.0 - 2.0 * pt.r, 1e-14));
            assert!(close(t * t, (1.0 - pt.x) / (3.0 + pt.x), 1e-14));
            assert!(close(
                pt.phi.cos(),
                -pt.r + (1.0 - 2.0 * pt.r).sqrt(),
                1e-14
            ));
            assert!(close(pt.delta.sin(), pt.r / (1.0 - pt.r), 1e-14));
            let back = ParamPoint::from_phi(pt.phi).unwrap();
            assert!(relative_difference(back.t, t) < 1e-12);
        }
    }

    #[test]
    fn phi_from_q() {
        let c = constants();
        assert!(close(phi_of_q(c.q0).unwrap(), c.phi0, 1e-7));
        let q_right = pq_of_t(SQRT_2 - 1.0).unwrap().1;
        assert!(close(phi_of_q(q_right).unwrap(), FRAC_PI_2, 1e-9));
        assert!(phi_of_q(2.0 + 1e-9).unwrap() < 1e-3);
        assert!(phi_of_q(2.5).is_err());
    }
}
