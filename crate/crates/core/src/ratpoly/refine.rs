use super::RatPoly;
use crate::error::{GionError, Result};

pub const MAX_REFINE_ITERATIONS: usize = 200;

/// Result of [`refine_root`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refinement {
    pub root: f64,
    /// Final bracket; the polynomial changes sign on it (or `root` is an
    /// exact float zero and the bracket collapses to it).
    pub bracket: (f64, f64),
    pub iterations: usize,
}

fn horner(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut v = 0.0;
    let mut dv = 0.0;
    for &c in coeffs.iter().rev() {
        dv = dv * x + v;
        v = v * x + c;
    }
    (v, dv)
}

/// Bisection-bracketed Newton iteration for a sign change of `poly` on
/// `[lo, hi]`.
///
/// A Newton step is taken only when it lands strictly inside the current
/// bracket and decreases `|poly|`; otherwise the bracket is bisected. The
/// returned root is within `tol` of a true root.
pub fn refine_root(poly: &RatPoly, lo: f64, hi: f64, tol: f64) -> Result<Refinement> {
    if !(tol > 0.0) || !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(GionError::Domain(format!(
            "bad refinement request [{lo}, {hi}] tol {tol}"
        )));
    }
    let coeffs = poly.to_f64_coeffs();
    let f = |x: f64| horner(&coeffs, x);

    let (mut lo, mut hi) = (lo, hi);
    let (flo, _) = f(lo);
    let (fhi, _) = f(hi);
    if flo == 0.0 {
        return Ok(Refinement {
            root: lo,
            bracket: (lo, lo),
            iterations: 0,
        });
    }
    if fhi == 0.0 {
        return Ok(Refinement {
            root: hi,
            bracket: (hi, hi),
            iterations: 0,
        });
    }
    if flo.signum() == fhi.signum() {
        return Err(GionError::Bracketing { lo, hi });
    }
    let lo_sign = flo.signum();

    let mut x = 0.5 * (lo + hi);
    for iter in 1..=MAX_REFINE_ITERATIONS {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Ok(Refinement {
                root: x,
                bracket: (x, x),
                iterations: iter,
            });
        }
        if fx.signum() == lo_sign {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= tol {
            let root = 0.5 * (lo + hi);
            return Ok(Refinement {
                root,
                bracket: (lo, hi),
                iterations: iter,
            });
        }

        let newton = x - fx / dfx;
        let accepted =
            newton.is_finite() && newton > lo && newton < hi && f(newton).0.abs() < fx.abs();
        if accepted {
            // Once Newton steps are below tolerance, probe both sides to
            // close the bracket around the iterate.
            if (newton - x).abs() <= 0.5 * tol {
                let a = (newton - 0.5 * tol).max(lo);
                let b = (newton + 0.5 * tol).min(hi);
                let (fa, _) = f(a);
                let (fb, _) = f(b);
                if fa == 0.0 {
                    return Ok(Refinement {
                        root: a,
                        bracket: (a, a),
                        iterations: iter,
                    });
                }
                if fb == 0.0 {
                    return Ok(Refinement {
                        root: b,
                        bracket: (b, b),
                        iterations: iter,
                    });
                }
                if fa.signum() != fb.signum() {
                    return Ok(Refinement {
                        root: newton,
                        bracket: (a, b),
                        iterations: iter,
                    });
                }
            }
            x = newton;
        } else {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            x = mid;
        }
    }
    Err(GionError::Convergence {
        lo,
        hi,
        iterations: MAX_REFINE_ITERATIONS,
    })
}
