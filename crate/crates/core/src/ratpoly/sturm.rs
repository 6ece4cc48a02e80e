use num_traits::{Signed, Zero};

use super::{gcd, RatPoly, Rational};
use crate::error::{GionError, Result};

/// Canonical Sturm sequence of a square-free polynomial.
///
/// `polys[0]` is the square-free input, `polys[1]` its derivative, and each
/// further entry is the negated remainder of the two before it. Entries are
/// rescaled by positive constants only, which leaves every sign untouched.
#[derive(Debug, Clone, PartialEq)]
pub struct SturmChain {
    polys: Vec<RatPoly>,
}

impl SturmChain {
    /// Builds the chain of the square-free part of `poly`.
    pub fn new(poly: &RatPoly) -> Result<Self> {
        if poly.is_zero() {
            return Err(GionError::Domain(
                "Sturm chain of the zero polynomial".into(),
            ));
        }
        let base = if poly.is_constant() {
            poly.clone()
        } else {
            let g = gcd(poly, &poly.derivative())?;
            normalize_positive(&poly.exact_div(&g)?)
        };
        let mut polys = vec![base.clone()];
        let d = base.derivative();
        if !d.is_zero() {
            polys.push(normalize_positive(&d));
            loop {
                let n = polys.len();
                let r = polys[n - 2].rem(&polys[n - 1])?;
                if r.is_zero() {
                    break;
                }
                polys.push(normalize_positive(&-r));
            }
        }
        Ok(Self { polys })
    }

    pub fn polys(&self) -> &[RatPoly] {
        &self.polys
    }

    /// Number of sign changes along the chain at `x`, zeros skipped.
    pub fn sign_variations(&self, x: &Rational) -> usize {
        let mut last = 0i8;
        let mut changes = 0;
        for p in &self.polys {
            let v = p.eval(x);
            let s = if v.is_zero() {
                continue;
            } else if v.is_positive() {
                1
            } else {
                -1
            };
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    /// Distinct real roots in `(lo, hi]`. Endpoints must not be roots.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> Result<usize> {
        if lo >= hi {
            return Err(GionError::Domain(format!("empty interval ({lo}, {hi}]")));
        }
        for endpoint in [lo, hi] {
            if self.polys[0].eval(endpoint).is_zero() {
                return Err(GionError::EndpointRoot {
                    endpoint: endpoint.to_string(),
                });
            }
        }
        let (vlo, vhi) = (self.sign_variations(lo), self.sign_variations(hi));
        vlo.checked_sub(vhi).ok_or_else(|| {
            GionError::Consistency(format!("sign variations increased: {vlo} -> {vhi}"))
        })
    }
}

/// Exact number of distinct real roots of `poly` in `(lo, hi]`.
pub fn sturm_count(poly: &RatPoly, lo: &Rational, hi: &Rational) -> Result<usize> {
    SturmChain::new(poly)?.count(lo, hi)
}

fn normalize_positive(p: &RatPoly) -> RatPoly {
    match p.leading_coeff() {
        Some(lc) => p.scale(&lc.abs().recip()),
        None => p.clone(),
    }
}
