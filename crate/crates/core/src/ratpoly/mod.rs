//! Exact rational arithmetic and dense univariate polynomials over the rationals.
//!
//! Everything here is a pure value type. `RatPoly` keeps its coefficients in
//! ascending order of degree and is always trimmed, so the zero polynomial is
//! the empty coefficient vector.

mod factor;
mod refine;
mod sturm;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{GionError, Result};

pub use factor::{
    factor_degrees_mod_p, irreducibility_certificate, IrreducibilityCertificate, Verdict, Witness,
    CERTIFICATE_PRIME_COUNT,
};
pub use refine::{refine_root, Refinement, MAX_REFINE_ITERATIONS};
pub use sturm::{sturm_count, SturmChain};

/// Arbitrary-precision rational, always held in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Builds `num / den`. Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact binary value of a finite float. Every finite `f64` is a dyadic
/// rational, so nothing is rounded.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Nearest float to an exact rational.
pub fn rational_to_f64(x: &Rational) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Very large numerator and denominator: shift both down to keep the ratio.
    let num_bits = x.numer().bits() as i64;
    let den_bits = x.denom().bits() as i64;
    let shift = (num_bits.min(den_bits) - 64).max(0) as usize;
    let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Parses `"num/den"` or a plain integer. Decimal notation is rejected so that
/// callers can route it to the floating-point path instead.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || GionError::Domain(format!("not a rational literal: {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(GionError::Domain("zero denominator".into()));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = text.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Dense polynomial with rational coefficients; `coeffs[i]` multiplies `t^i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn identity() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            &acc * &Self::new(vec![-r.clone(), Rational::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Horner evaluation in exact arithmetic.
    pub fn eval(&self, point: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * point + c)
    }

    /// Coefficients rounded to the nearest floats, in ascending order.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Divides through by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `deg remainder < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dlen = divisor.coeffs.len();
        let lc = divisor
            .leading_coeff()
            .ok_or_else(|| GionError::Domain("division by the zero polynomial".into()))?;
        if self.coeffs.len() < dlen {
            return Ok((Self::zero(), self.clone()));
        }
        let lc_inv = lc.recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dlen + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let factor = top * &lc_inv;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &factor * dc;
            }
            quot[k] = factor;
        }
        rem.truncate(dlen - 1);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact division; errors if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(GionError::Domain("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// `self / gcd(self, self')`: same roots, each simple.
    pub fn square_free_part(&self) -> Result<Self> {
        if self.is_constant() {
            return Ok(self.monic());
        }
        let g = gcd(self, &self.derivative())?;
        Ok(self.exact_div(&g)?.monic())
    }

    /// Removes the root at zero: returns its multiplicity `k` and `self / t^k`.
    pub fn deflate_zero_root(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, Self::new(self.coeffs[k..].to_vec()))
    }

    /// Integer coefficients of the primitive polynomial proportional to
    /// `self`, normalised so the leading coefficient is positive.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }

    /// Same polynomial with denominators cleared (primitive, positive leading
    /// coefficient).
    pub fn clear_denominators(&self) -> Self {
        Self::new(
            self.primitive_integer_coeffs()
                .into_iter()
                .map(Rational::from_integer)
                .collect(),
        )
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }
}

/// Exact value of `poly` at `point`.
pub fn eval(poly: &RatPoly, point: &Rational) -> Rational {
    poly.eval(point)
}

/// Monic greatest common divisor by the Euclidean remainder sequence.
pub fn gcd(f: &RatPoly, g: &RatPoly) -> Result<RatPoly> {
    if f.is_zero() && g.is_zero() {
        return Err(GionError::Domain("gcd of two zero polynomials".into()));
    }
    let (mut a, mut b) = (f.monic(), g.monic());
    while !b.is_zero() {
        let r = a.rem(&b)?.monic();
        a = b;
        b = r;
    }
    Ok(a.monic())
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                _ if unit => {}
                _ => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: RatPoly) -> RatPoly {
        &self + &rhs
    }
}

impl Sub for RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: RatPoly) -> RatPoly {
        &self - &rhs
    }
}

impl Mul for RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: RatPoly) -> RatPoly {
        &self * &rhs
    }
}

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_integers(c)
    }

    #[test]
    fn trims_trailing_zeros() {
        let f = p(&[1, 2, 0, 0]);
        assert_eq!(f.degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn eval_by_horner() {
        assert_eq!(eval(&p(&[-2, 0, 1]), &ratio(3, 2)), ratio(1, 4));
        assert_eq!(p(&[]).eval(&int(7)), int(0));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(gcd(&p(&[1, 0, 1]), &p(&[-1, 1])).unwrap(), RatPoly::one());
        let sq = RatPoly::from_roots(&[ratio(1, 2), ratio(1, 2)]);
        assert_eq!(
            gcd(&sq, &sq.derivative()).unwrap(),
            RatPoly::new(vec![ratio(-1, 2), int(1)])
        );
        assert_eq!(gcd(&RatPoly::zero(), &p(&[0, 3])).unwrap(), p(&[0, 1]));
    }

    #[test]
    fn gcd_of_two_zeros_is_an_error() {
        assert!(matches!(
            gcd(&RatPoly::zero(), &RatPoly::zero()),
            Err(GionError::Domain(_))
        ));
    }

    #[test]
    fn division_identity() {
        let f = p(&[5, -3, 0, 2, 7]);
        let g = p(&[1, 0, 3]);
        let (q, r) = f.div_rem(&g).unwrap();
        assert_eq!(&(&q * &g) + &r, f);
        assert!(r.degree().unwrap() < 2);
        assert!(f.div_rem(&RatPoly::zero()).is_err());
    }

    #[test]
    fn square_free_part_drops_multiplicity() {
        let f = RatPoly::from_roots(&[int(1), int(1), int(1), ratio(-2, 3)]);
        assert_eq!(
            f.square_free_part().unwrap(),
            RatPoly::from_roots(&[int(1), ratio(-2, 3)])
        );
    }

    #[test]
    fn clear_denominators_is_primitive() {
        let f = RatPoly::new(vec![ratio(1, 4), int(-1), ratio(27, 4)]);
        assert_eq!(f.clear_denominators(), p(&[1, -4, 27]));
        assert_eq!(
            RatPoly::new(vec![ratio(2, 3), ratio(-4, 3)]).clear_denominators(),
            p(&[-1, 2])
        );
    }

    #[test]
    fn deflates_zero_roots() {
        let (k, g) = p(&[0, 0, 3, 1]).deflate_zero_root();
        assert_eq!(k, 2);
        assert_eq!(g, p(&[3, 1]));
    }

    #[test]
    fn parses_rational_literals() {
        assert_eq!(parse_rational("9/4").unwrap(), ratio(9, 4));
        assert_eq!(parse_rational(" -6 / 8 ").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert!(parse_rational("2.25").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn float_rationalization_is_exact() {
        let q = rational_from_f64(0.1).unwrap();
        assert_ne!(q, ratio(1, 10));
        assert_eq!(rational_to_f64(&q), 0.1);
        assert_eq!(rational_from_f64(2.25).unwrap(), ratio(9, 4));
        assert!(rational_from_f64(f64::NAN).is_none());
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(p(&[-2, 0, 1]).to_string(), "t^2 - 2");
        assert_eq!(
            RatPoly::new(vec![ratio(1, 4), int(-1)]).to_string(),
            "-t + 1/4"
        );
    }
}
