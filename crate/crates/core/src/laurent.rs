//! Exact sparse Laurent polynomials over the integers, the trinomial shape
//! `P(x) = a-1·x^-1 + a0 + a1·x`, and a digit-driven constant-term evaluator
//! mod p used as an independent check on the Lucas-product fast path.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::digits::BasePDigits;
use crate::error::{Error, Result};
use crate::modular::residue_big;

/// Exponent → coefficient map; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut f = Self::zero();
        f.add_term(exp, coeff.into());
        f
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut f = Self::zero();
        for (e, c) in terms {
            f.add_term(e, c.into());
        }
        f
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// Lowest and highest exponent with a nonzero coefficient.
    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        let lo = *self.coeffs.keys().next()?;
        let hi = *self.coeffs.keys().next_back()?;
        Some((lo, hi))
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u64) -> LaurentPoly {
        self.pow_inner(n, None)
    }

    /// `self^n` with every intermediate product reduced mod `p`.
    pub fn pow_mod(&self, n: u64, p: u32) -> LaurentPoly {
        self.pow_inner(n, Some(p))
    }

    fn pow_inner(&self, mut n: u64, p: Option<u32>) -> LaurentPoly {
        let reduce = |f: LaurentPoly| match p {
            Some(p) => f.reduce_mod(p),
            None => f,
        };
        let mut acc = reduce(LaurentPoly::one());
        let mut base = reduce(self.clone());
        while n > 0 {
            if n & 1 == 1 {
                acc = reduce(acc.mul(&base));
            }
            n >>= 1;
            if n > 0 {
                base = reduce(base.mul(&base));
            }
        }
        acc
    }

    /// Constant term.
    pub fn ct(&self) -> BigInt {
        self.coeffs.get(&0).cloned().unwrap_or_default()
    }

    /// `ct[self · x^i]`, the coefficient of `x^-i`.
    pub fn coeff(&self, i: i64) -> BigInt {
        self.coeffs.get(&-i).cloned().unwrap_or_default()
    }

    /// Coefficients reduced into `[0, p)`; zero residues dropped.
    pub fn reduce_mod(&self, p: u32) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e, c) in &self.coeffs {
            out.add_term(e, BigInt::from(residue_big(c, p)));
        }
        out
    }

    /// `x -> x^k` (exponent scaling).
    pub fn substitute_power(&self, k: i64) -> LaurentPoly {
        assert!(k >= 1, "substitution exponent must be positive");
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// `x -> x^-1`.
    pub fn reflect(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// `max(deg Q(x), deg Q(x^-1))`, or 0 for the zero polynomial.
    pub fn span(&self) -> u64 {
        self.exponent_range()
            .map(|(lo, hi)| lo.unsigned_abs().max(hi.unsigned_abs()))
            .unwrap_or(0)
    }
}

impl fmt::Display for LaurentPoly {
    /// Comma-separated `exponent:coefficient` pairs; `0:0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0:0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(e, c)| format!("{e}:{c}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut f = LaurentPoly::zero();
        for pair in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (e, c) = pair
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected exponent:coefficient, got {pair:?}")))?;
            let e: i64 = e
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {pair:?}")))?;
            let c: BigInt = c
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient in {pair:?}")))?;
            f.add_term(e, c);
        }
        Ok(f)
    }
}

/// `P(x) = am1·x^-1 + a0 + a1·x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Trinomial {
    pub am1: i64,
    pub a0: i64,
    pub a1: i64,
}

impl Trinomial {
    pub fn new(am1: i64, a0: i64, a1: i64) -> Result<Self> {
        if am1 == 0 && a0 == 0 && a1 == 0 {
            return Err(Error::UnsupportedShape("all three coefficients are zero".into()));
        }
        Ok(Trinomial { am1, a0, a1 })
    }

    /// `x^-1 + 1 + x`.
    pub fn central() -> Self {
        Trinomial { am1: 1, a0: 1, a1: 1 }
    }

    pub fn is_symmetric(&self) -> bool {
        self.am1 == self.a1
    }

    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms([(-1, self.am1), (0, self.a0), (1, self.a1)])
    }
}

impl fmt::Display for Trinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.am1, self.a0, self.a1)
    }
}

impl FromStr for Trinomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("trinomial needs three coefficients, got {s:?}")));
        }
        let parse = |t: &str| {
            t.parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad trinomial coefficient {t:?}")))
        };
        Trinomial::new(parse(parts[0])?, parse(parts[1])?, parse(parts[2])?)
    }
}

/// Dense residue Laurent polynomial: `coeffs[j]` multiplies `x^(low + j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct DenseMod {
    low: i64,
    coeffs: Vec<u32>,
}

impl DenseMod {
    fn from_poly(f: &LaurentPoly, p: u32) -> Self {
        let Some((lo, hi)) = f.exponent_range() else {
            return DenseMod { low: 0, coeffs: Vec::new() };
        };
        let mut coeffs = vec![0; (hi - lo + 1) as usize];
        for (e, c) in f.terms() {
            coeffs[(e - lo) as usize] = residue_big(c, p);
        }
        DenseMod { low: lo, coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            return DenseMod { low: 0, coeffs: Vec::new() };
        }
        self.coeffs.drain(..lead);
        self.low += lead as i64;
        self
    }

    fn mul(&self, other: &DenseMod, p: u32) -> DenseMod {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return DenseMod { low: 0, coeffs: Vec::new() };
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p as u64;
            }
        }
        DenseMod {
            low: self.low + other.low,
            coeffs: out.into_iter().map(|c| c as u32).collect(),
        }
        .trimmed()
    }

    /// Keeps the exponents divisible by `p` and divides them by `p`.
    fn section(&self, p: u32) -> DenseMod {
        let p = p as i64;
        let mut terms = Vec::new();
        for (j, &c) in self.coeffs.iter().enumerate() {
            let e = self.low + j as i64;
            if c != 0 && e.rem_euclid(p) == 0 {
                terms.push((e / p, c));
            }
        }
        let Some(&(lo, _)) = terms.first() else {
            return DenseMod { low: 0, coeffs: Vec::new() };
        };
        let hi = terms.last().unwrap().0;
        let mut coeffs = vec![0; (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] = c;
        }
        DenseMod { low: lo, coeffs }
    }

    fn ct(&self) -> u32 {
        if self.low > 0 {
            return 0;
        }
        self.coeffs.get((-self.low) as usize).copied().unwrap_or(0)
    }
}

/// Evaluates `ct[P(x)^n Q(x)] mod p` one base-p digit of `n` at a time,
/// using `P(x)^p ≡ P(x^p)`: the low digit `d` is absorbed into
/// `Q ← section_p(P^d · Q)` and the remaining index is `n div p`.
///
/// This never consults the digit-product law, so it serves as an
/// independent oracle for arbitrarily long indices.
#[derive(Clone, Debug)]
pub struct ConstantTermMod {
    p: u32,
    powers: Vec<DenseMod>,
    q: DenseMod,
}

impl ConstantTermMod {
    pub fn new(poly: &LaurentPoly, q: &LaurentPoly, p: u32) -> Self {
        let base = DenseMod::from_poly(poly, p);
        let mut powers = Vec::with_capacity(p as usize);
        let mut acc = DenseMod::from_poly(&LaurentPoly::one(), p);
        for _ in 0..p {
            powers.push(acc.clone());
            acc = acc.mul(&base, p);
        }
        ConstantTermMod {
            p,
            powers,
            q: DenseMod::from_poly(q, p),
        }
    }

    pub fn eval(&self, n: &BasePDigits) -> u32 {
        assert_eq!(n.p(), self.p, "numeral base must match the evaluator modulus");
        let mut q = self.q.clone();
        for &d in n.digits().iter().rev() {
            q = self.powers[d as usize].mul(&q, self.p).section(self.p);
            if q.coeffs.is_empty() {
                return 0;
            }
        }
        q.ct()
    }

    pub fn eval_u64(&self, n: u64) -> u32 {
        self.eval(&BasePDigits::from_u64_raw(n, self.p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(am1: i64, a0: i64, a1: i64) -> LaurentPoly {
        Trinomial::new(am1, a0, a1).unwrap().to_poly()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn mul_examples() {
        let p = t(1, 1, 1);
        let sq = p.mul(&p);
        let expected = LaurentPoly::from_terms([(-2, 1), (-1, 2), (0, 3), (1, 2), (2, 1)]);
        assert_eq!(sq, expected);
        assert_eq!(p.mul(&LaurentPoly::one()), p);
        assert!(p.mul(&LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn pow_examples() {
        assert_eq!(t(1, 1, 1).pow(6).ct(), big(141));
        assert_eq!(t(1, 1, 1).pow(1), t(1, 1, 1));
        assert_eq!(t(1, 2, 1).pow(3).ct(), big(20));
        assert_eq!(t(1, 2, 1).pow(0), LaurentPoly::one());
    }

    #[test]
    fn ct_and_coeff() {
        let p = t(1, 1, 1);
        assert_eq!(p.ct(), big(1));
        assert_eq!(p.pow(2).ct(), big(3));
        assert_eq!(LaurentPoly::zero().ct(), big(0));
        let sq = p.pow(2);
        assert_eq!(sq.coeff(1), big(2));
        assert_eq!(sq.coeff(-1), sq.coeff(1));
        assert_eq!(sq.coeff(3), big(0));
        let asym = t(2, 0, 5).pow(3);
        assert_eq!(asym.coeff(1), asym.mul(&LaurentPoly::monomial(1, 1)).ct());
    }

    #[test]
    fn reduce_mod_frobenius_instance() {
        let cube = t(1, 1, 1).pow(3);
        assert_eq!(
            cube,
            LaurentPoly::from_terms([(-3, 1), (-2, 3), (-1, 6), (0, 7), (1, 6), (2, 3), (3, 1)])
        );
        let r = cube.reduce_mod(3);
        assert_eq!(r, LaurentPoly::from_terms([(-3, 1), (0, 1), (3, 1)]));
        assert_eq!(r.reduce_mod(3), r);
        assert!(LaurentPoly::zero().reduce_mod(3).is_zero());
        assert_eq!(
            LaurentPoly::from_terms([(0, -1)]).reduce_mod(5),
            LaurentPoly::from_terms([(0, 4)])
        );
    }

    #[test]
    fn pow_mod_matches_reduced_pow() {
        let f = t(2, -3, 1);
        for p in [2, 3, 7] {
            for n in 0..12 {
                assert_eq!(f.pow_mod(n, p), f.pow(n).reduce_mod(p));
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let q: LaurentPoly = "0:1,2:-1".parse().unwrap();
        assert_eq!(q, LaurentPoly::from_terms([(0, 1), (2, -1)]));
        assert_eq!(q.to_string(), "0:1,2:-1");
        assert_eq!("-2:3, 0:0".parse::<LaurentPoly>().unwrap().to_string(), "-2:3");
        assert!("0-1".parse::<LaurentPoly>().is_err());
        let tri: Trinomial = "1,-2,3".parse().unwrap();
        assert_eq!(tri, Trinomial { am1: 1, a0: -2, a1: 3 });
        assert_eq!(tri.to_string(), "1,-2,3");
        assert!("0,0,0".parse::<Trinomial>().is_err());
        assert!("1,1".parse::<Trinomial>().is_err());
        assert_eq!(q.span(), 2);
        assert_eq!(q.reflect().to_string(), "-2:-1,0:1");
    }

    #[test]
    fn digit_evaluator_matches_exact_expansion() {
        let q: LaurentPoly = "0:1,2:-1".parse().unwrap();
        for (tri, p) in [((1, 1, 1), 2u32), ((1, 1, 1), 3), ((1, 2, 1), 5), ((2, -1, 3), 7)] {
            let poly = t(tri.0, tri.1, tri.2);
            let eval = ConstantTermMod::new(&poly, &q, p);
            for n in 0..80u64 {
                let exact = poly.pow(n).mul(&q).ct();
                assert_eq!(eval.eval_u64(n), residue_big(&exact, p), "P={tri:?} p={p} n={n}");
            }
        }
    }
}
