//! Solver for the Gion shrine sangaku problem.
//!
//! A circular segment with chord `a` and sagitta `m` holds a square of side
//! `s` standing on the sagitta and a circle of diameter `d` tangent to the
//! chord, the sagitta and the arc. Given `p = a + m + s + d` and
//! `q = m/a + d/m + s/d`, recover the four lengths.
//!
//! * [`ratpoly`] exact rationals, polynomials, Sturm chains, mod-p factoring.
//! * [`geometry`] forward parametrizations by the angle, radius, `x` and `t`.
//! * [`solver`] feasibility and the inverse map `(p, q) -> (a, m, s, d)`.
//! * [`oracle`] constraint-based reconstruction and exact identity checks.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geometry;
pub mod oracle;
pub mod ratpoly;
pub mod solver;

pub use error::{GionError, Result};
pub use geometry::{Constants, ParamPoint, Scale, SegmentQuantities};
pub use ratpoly::{RatPoly, Rational};
pub use solver::{Feasibility, FeasibilityVerdict, GionSolution, QInput};
