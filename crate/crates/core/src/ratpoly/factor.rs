//! Degree patterns of polynomials reduced modulo a prime, and the one-sided
//! irreducibility certificate built on them.
//!
//! If `f` keeps its degree modulo `p` and is irreducible there, it is
//! irreducible over the rationals. The converse fails (some irreducible
//! rational polynomials split modulo every prime), so the certificate may
//! legitimately answer `Unknown`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{gcd, RatPoly, Rational};
use crate::error::{GionError, Result};

/// How many usable primes the certificate tries before giving up.
pub const CERTIFICATE_PRIME_COUNT: usize = 25;

/// Bound on `|coefficient|` for the rational-root search; larger constant or
/// leading terms make divisor enumeration impractical and the search is
/// skipped.
const RATIONAL_ROOT_SEARCH_LIMIT: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Irreducible,
    Reducible,
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// Reduction modulo this prime has full degree and is irreducible.
    Prime(u64),
    RationalRoot(Rational),
    /// A nontrivial factor of positive degree.
    Factor(RatPoly),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IrreducibilityCertificate {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Primes tried, with the factor degrees found for each.
    pub attempts: Vec<(u64, Vec<usize>)>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Irreducible => "Irreducible",
            Verdict::Reducible => "Reducible",
            Verdict::Unknown => "Unknown",
        })
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Prime(p) => write!(f, "prime {p}"),
            Witness::RationalRoot(r) => write!(f, "rational root {r}"),
            Witness::Factor(g) => write!(f, "factor {g}"),
        }
    }
}

/// Dense polynomial over the field with `p` elements, ascending coefficients,
/// trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

impl FpPoly {
    fn new(p: u64, mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { p, c }
    }

    fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn is_one(&self) -> bool {
        self.c == [1]
    }

    fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.p);
                Self::new(
                    self.p,
                    self.c.iter().map(|&a| mul_mod(a, inv, self.p)).collect(),
                )
            }
        }
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let p = self.p;
        Self::new(
            p,
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).copied().unwrap_or(0);
                    let b = other.c.get(i).copied().unwrap_or(0);
                    (a + p - b) % p
                })
                .collect(),
        )
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(self.p, Vec::new());
        }
        let p = self.p;
        let mut out = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::new(p, out)
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        assert!(!d.is_zero(), "division by zero polynomial mod {p}");
        if self.c.len() < d.c.len() {
            return (Self::new(p, Vec::new()), self.clone());
        }
        let inv = inv_mod(*d.c.last().unwrap(), p);
        let mut r = self.c.clone();
        let dl = d.c.len();
        let mut q = vec![0u64; r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let top = r[k + dl - 1];
            if top == 0 {
                continue;
            }
            let f = mul_mod(top, inv, p);
            for (j, &dc) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mul_mod(f, dc, p)) % p;
            }
            q[k] = f;
        }
        r.truncate(dl - 1);
        (Self::new(p, q), Self::new(p, r))
    }

    fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| mul_mod(a, i as u64 % p, p))
                .collect(),
        )
    }

    /// `self^exp mod modulus` by square and multiply.
    fn pow_rem(&self, mut exp: u64, modulus: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(modulus);
        let mut base = self.rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    /// For `self = g(x^p)` returns `g`; valid because `a^p = a` in the prime field.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::new(self.p, self.c.iter().step_by(p).copied().collect())
    }

    /// Square-free decomposition of a monic polynomial: pairs `(g, e)` with
    /// `self = prod g^e`, every `g` square-free.
    fn square_free_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let d = self.derivative();
        if d.is_zero() {
            for (g, e) in self.pth_root().square_free_decomposition() {
                out.push((g, e * self.p as usize));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.div_rem(&c).0;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.div_rem(&y).0;
            if z.degree() > 0 {
                out.push((z.monic(), i));
            }
            i += 1;
            w = y;
            c = c.div_rem(&w).0;
        }
        if c.degree() > 0 {
            for (g, e) in c.monic().pth_root().square_free_decomposition() {
                out.push((g, e * self.p as usize));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic square-free polynomial:
    /// degrees of its irreducible factors.
    fn distinct_degree_degrees(&self) -> Vec<usize> {
        let mut degrees = Vec::new();
        let mut f = self.clone();
        let x = Self::x(self.p);
        let mut h = x.rem(&f);
        let mut i = 0;
        while f.degree() >= 2 * (i + 1) {
            i += 1;
            h = h.pow_rem(self.p, &f);
            let g = f.gcd(&h.sub(&x));
            if g.degree() > 0 {
                degrees.extend(std::iter::repeat_n(i, g.degree() / i));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
        }
        if f.degree() > 0 {
            degrees.push(f.degree());
        }
        degrees
    }
}

fn check_prime(poly: &RatPoly, p: u64) -> Result<()> {
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(GionError::Domain(format!(
            "{p} is not a supported prime modulus"
        )));
    }
    let lc = poly
        .leading_coeff()
        .ok_or_else(|| GionError::Domain("zero polynomial has no factorization".into()))?;
    let bp = BigInt::from(p);
    let bad = lc.numer().is_multiple_of(&bp)
        || poly.coeffs().iter().any(|c| c.denom().is_multiple_of(&bp));
    if bad {
        return Err(GionError::BadPrime { prime: p });
    }
    Ok(())
}

fn reduce_mod_p(poly: &RatPoly, p: u64) -> FpPoly {
    FpPoly::new(
        p,
        poly.coeffs()
            .iter()
            .map(|c| {
                let n = bigint_mod(c.numer(), p);
                let d = bigint_mod(c.denom(), p);
                mul_mod(n, inv_mod(d, p), p)
            })
            .collect(),
    )
}

/// Degrees of the irreducible factors of `poly` modulo `p`, repeated factors
/// listed once per multiplicity, sorted ascending.
pub fn factor_degrees_mod_p(poly: &RatPoly, p: u64) -> Result<Vec<usize>> {
    check_prime(poly, p)?;
    let f = reduce_mod_p(poly, p).monic();
    let mut degrees = Vec::new();
    for (g, e) in f.square_free_decomposition() {
        for d in g.distinct_degree_degrees() {
            degrees.extend(std::iter::repeat_n(d, e));
        }
    }
    degrees.sort_unstable();
    Ok(degrees)
}

fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > RATIONAL_ROOT_SEARCH_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots by the rational-root theorem, when the constant and leading
/// integer coefficients are small enough to enumerate divisors.
fn find_rational_root(poly: &RatPoly) -> Option<Rational> {
    let ints = poly.primitive_integer_coeffs();
    if ints.first().is_some_and(Zero::is_zero) {
        return Some(Rational::zero());
    }
    let nums = small_divisors(ints.first()?)?;
    let dens = small_divisors(ints.last()?)?;
    for &n in &nums {
        for &d in &dens {
            for sign in [1i64, -1] {
                let cand = Rational::new(BigInt::from(n) * sign, BigInt::from(d));
                if poly.eval(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// Odd primes in increasing order that are usable for `poly`.
fn usable_primes(poly: &RatPoly) -> impl Iterator<Item = u64> + '_ {
    (3u64..)
        .filter(|&p| is_prime(p))
        .filter(move |&p| check_prime(poly, p).is_ok())
}

/// Tries to prove `poly` irreducible over the rationals, or exhibit a factor.
pub fn irreducibility_certificate(poly: &RatPoly) -> Result<IrreducibilityCertificate> {
    let deg = match poly.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(GionError::Domain(
                "irreducibility needs degree at least 1".into(),
            ))
        }
    };
    let reducible = |w: Witness| IrreducibilityCertificate {
        verdict: Verdict::Reducible,
        witness: Some(w),
        attempts: Vec::new(),
    };

    if deg >= 2 {
        let g = gcd(poly, &poly.derivative())?;
        if !g.is_constant() {
            return Ok(reducible(Witness::Factor(g)));
        }
        if let Some(r) = find_rational_root(poly) {
            return Ok(reducible(Witness::RationalRoot(r)));
        }
    }

    let mut attempts = Vec::new();
    for p in usable_primes(poly).take(CERTIFICATE_PRIME_COUNT) {
        let degrees = factor_degrees_mod_p(poly, p)?;
        let irreducible = degrees == [deg];
        attempts.push((p, degrees));
        if irreducible {
            return Ok(IrreducibilityCertificate {
                verdict: Verdict::Irreducible,
                witness: Some(Witness::Prime(p)),
                attempts,
            });
        }
    }
    Ok(IrreducibilityCertificate {
        verdict: Verdict::Unknown,
        witness: None,
        attempts,
    })
}
