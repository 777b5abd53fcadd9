//! The normal form `b_n = (1/d)·Σ c_i·a_{n+i}` and its evaluators.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::digits::BasePDigits;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Trinomial};
use crate::modular::{check_prime, inv_mod, mul_mod, residue_big};
use crate::trinomial::{a_oracle_prefix, digit_table, DigitTable};

/// `b_n = (1/divisor)·Σ coeffs[i]·a_{n+i}` over a fixed trinomial.
///
/// `modulus` is set when the coefficients are residues that only describe
/// the sequence mod that prime (reductions with `a1 != 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComboSpec {
    pub tri: Trinomial,
    coeffs: Vec<BigInt>,
    divisor: u64,
    modulus: Option<u32>,
}

impl ComboSpec {
    /// Trailing zero coefficients are trimmed (keeping at least one).
    pub fn new(tri: Trinomial, coeffs: Vec<BigInt>, divisor: u64) -> Result<Self> {
        Self::build(tri, coeffs, divisor, None)
    }

    pub fn with_modulus(tri: Trinomial, coeffs: Vec<BigInt>, divisor: u64, p: u32) -> Result<Self> {
        Self::build(tri, coeffs, divisor, Some(p))
    }

    fn build(tri: Trinomial, mut coeffs: Vec<BigInt>, divisor: u64, modulus: Option<u32>) -> Result<Self> {
        if divisor == 0 {
            return Err(Error::InvalidCombo("divisor must be positive".into()));
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        Ok(ComboSpec { tri, coeffs, divisor, modulus })
    }

    /// The bare sequence `a_n`.
    pub fn single(tri: Trinomial) -> Self {
        ComboSpec {
            tri,
            coeffs: vec![BigInt::from(1)],
            divisor: 1,
            modulus: None,
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn divisor(&self) -> u64 {
        self.divisor
    }

    pub fn modulus(&self) -> Option<u32> {
        self.modulus
    }

    /// Span `h`: the combination reads `a_n … a_{n+h}`.
    pub fn span(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Divides out the gcd of all coefficients and the divisor.
    pub fn normalized(&self) -> Self {
        let g = self
            .coeffs
            .iter()
            .fold(BigInt::from(self.divisor), |g, c| g.gcd(c));
        if g <= BigInt::from(1) {
            return self.clone();
        }
        ComboSpec {
            tri: self.tri,
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
            divisor: (BigInt::from(self.divisor) / &g).to_u64().expect("divisor shrinks"),
            modulus: self.modulus,
        }
    }

    /// Whether the combination can be read mod `p`.
    pub fn check_modulus(&self, p: u32) -> Result<()> {
        if let Some(q) = self.modulus {
            if q != p {
                return Err(Error::InvalidCombo(format!(
                    "coefficients are residues mod {q}, not mod {p}"
                )));
            }
        }
        if self.divisor.is_multiple_of(p as u64) {
            return Err(Error::InvalidCombo(format!(
                "divisor {} is not invertible mod {p}",
                self.divisor
            )));
        }
        Ok(())
    }

    /// `Σ c_i·P^i / d` as a Laurent polynomial (only meaningful mod `p`):
    /// `b_n = ct[P^n · Q']` for this `Q'`.
    pub fn as_q_mod(&self, p: u32) -> Result<LaurentPoly> {
        self.check_modulus(p)?;
        let dinv = inv_mod((self.divisor % p as u64) as u32, p).expect("checked invertible");
        let base = self.tri.to_poly();
        let mut power = LaurentPoly::one();
        let mut q = LaurentPoly::zero();
        for c in &self.coeffs {
            let scale = mul_mod(residue_big(c, p), dinv, p);
            for (e, v) in power.terms() {
                q.add_term(e, v * scale);
            }
            power = power.mul(&base).reduce_mod(p);
        }
        Ok(q.reduce_mod(p))
    }

    /// Exact `b_from … b_{from+count-1}`; fails when the combination is
    /// residue-only or a term is not divisible by the divisor.
    pub fn exact_terms(&self, from: usize, count: usize) -> Result<Vec<BigInt>> {
        if let Some(p) = self.modulus {
            return Err(Error::Inapplicable(format!(
                "combination is only defined mod {p}"
            )));
        }
        let a = a_oracle_prefix(self.tri, from + count + self.span());
        let d = BigInt::from(self.divisor);
        (from..from + count)
            .map(|n| {
                let sum: BigInt = self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * &a[n + i])
                    .sum();
                let (q, r) = sum.div_rem(&d);
                if r.is_zero() {
                    Ok(q)
                } else {
                    Err(Error::InvalidCombo(format!(
                        "term {n} is not divisible by {}",
                        self.divisor
                    )))
                }
            })
            .collect()
    }

    /// Evaluator mod `p` backed by the digit table.
    pub fn evaluator(&self, p: u64) -> Result<ComboMod> {
        let p32 = check_prime(p)?;
        self.check_modulus(p32)?;
        let table = digit_table(self.tri, p)?;
        let dinv = inv_mod((self.divisor % p) as u32, p32).expect("checked invertible");
        Ok(ComboMod {
            table,
            coeffs: self.coeffs.iter().map(|c| residue_big(c, p32)).collect(),
            dinv,
        })
    }
}

impl fmt::Display for ComboSpec {
    /// `P=a-1,a0,a1; c=c0,…,ch; d=<divisor>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(BigInt::to_string).collect();
        write!(f, "P={}; c={}; d={}", self.tri, cs.join(","), self.divisor)
    }
}

impl FromStr for ComboSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tri = None;
        let mut coeffs = None;
        let mut divisor = 1u64;
        for field in s.split(';').map(str::trim).filter(|f| !f.is_empty()) {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {field:?}")))?;
            match key.trim() {
                "P" => tri = Some(value.parse::<Trinomial>()?),
                "c" => {
                    coeffs = Some(
                        value
                            .split(',')
                            .map(|c| {
                                c.trim()
                                    .parse::<BigInt>()
                                    .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))
                            })
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                "d" => {
                    divisor = value
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad divisor {value:?}")))?
                }
                other => return Err(Error::Parse(format!("unknown combination field {other:?}"))),
            }
        }
        let tri = tri.ok_or_else(|| Error::Parse("combination is missing P=".into()))?;
        let coeffs = coeffs.ok_or_else(|| Error::Parse("combination is missing c=".into()))?;
        ComboSpec::new(tri, coeffs, divisor)
    }
}

/// `b_n mod p` through the digit-product law.
#[derive(Clone, Debug)]
pub struct ComboMod {
    table: Arc<DigitTable>,
    coeffs: Vec<u32>,
    dinv: u32,
}

impl ComboMod {
    pub fn p(&self) -> u32 {
        self.table.p
    }

    pub fn table(&self) -> &DigitTable {
        &self.table
    }

    pub fn span(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Every coefficient vanishes mod `p`, so `b ≡ 0`.
    pub fn is_identically_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `d^-1·Σ c_i·a[i] mod p` for a window `a = (a_n, …, a_{n+h})`.
    pub fn combine(&self, a: &[u32]) -> u32 {
        let p = self.p();
        let sum = self
            .coeffs
            .iter()
            .zip(a)
            .fold(0u64, |acc, (&c, &v)| (acc + mul_mod(c, v, p) as u64) % p as u64);
        mul_mod(sum as u32, self.dinv, p)
    }

    pub fn term(&self, n: &BasePDigits) -> u32 {
        self.word(n, 1)[0]
    }

    pub fn term_u64(&self, n: u64) -> u32 {
        let a: Vec<u32> = (0..=self.span() as u64)
            .map(|i| self.table.a_mod_u64(n + i))
            .collect();
        self.combine(&a)
    }

    /// `b_start … b_{start+len-1} mod p`.
    pub fn word(&self, start: &BasePDigits, len: usize) -> Vec<u32> {
        let h = self.span();
        let mut a = Vec::with_capacity(len + h);
        let mut idx = start.clone();
        for t in 0..len + h {
            if t > 0 {
                idx = idx.add_u64(1);
            }
            a.push(self.table.a_mod(&idx));
        }
        (0..len).map(|t| self.combine(&a[t..=t + h])).collect()
    }

    /// `b_0 … b_{count-1} mod p`.
    pub fn prefix(&self, count: usize) -> Vec<u32> {
        let a = self.table.a_mod_prefix(count + self.span());
        (0..count)
            .map(|n| self.combine(&a[n..=n + self.span()]))
            .collect()
    }

    /// `b_from … b_{from+count-1} mod p` for machine-sized indices.
    pub fn range_u64(&self, from: u64, count: usize) -> Vec<u32> {
        let a: Vec<u32> = (0..(count + self.span()) as u64)
            .map(|t| self.table.a_mod_u64(from + t))
            .collect();
        (0..count)
            .map(|n| self.combine(&a[n..=n + self.span()]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn motzkin() -> ComboSpec {
        "P=1,1,1; c=3,2,-1; d=2".parse().unwrap()
    }

    #[test]
    fn text_round_trip() {
        let m = motzkin();
        assert_eq!(m.to_string(), "P=1,1,1; c=3,2,-1; d=2");
        assert_eq!(m.span(), 2);
        assert_eq!(m.to_string().parse::<ComboSpec>().unwrap(), m);
        assert!("c=1".parse::<ComboSpec>().is_err());
        assert!("P=1,1,1; c=1; d=0".parse::<ComboSpec>().is_err());
        assert!("P=1,1,1; c=x".parse::<ComboSpec>().is_err());
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let c = ComboSpec::new(Trinomial::central(), vec![1.into(), 0.into(), 0.into()], 1).unwrap();
        assert_eq!(c.span(), 0);
        let z = ComboSpec::new(Trinomial::central(), vec![0.into()], 1).unwrap();
        assert_eq!(z.span(), 0);
    }

    #[test]
    fn normalization() {
        let c = ComboSpec::new(Trinomial::central(), vec![2.into()], 2).unwrap();
        let n = c.normalized();
        assert_eq!((n.coeffs().to_vec(), n.divisor()), (vec![BigInt::from(1)], 1));
        assert_eq!(motzkin().normalized(), motzkin());
    }

    #[test]
    fn exact_and_modular_agree() {
        let m = motzkin();
        let exact = m.exact_terms(0, 12).unwrap();
        let want = [1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188, 5798];
        assert_eq!(exact, want.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>());
        for p in [3u64, 5, 7] {
            let ev = m.evaluator(p).unwrap();
            let pre = ev.prefix(12);
            for n in 0..12 {
                assert_eq!(pre[n], (want[n] % p as i64) as u32);
                assert_eq!(ev.term_u64(n as u64), pre[n]);
                assert_eq!(ev.term(&BasePDigits::from_u64(n as u64, p).unwrap()), pre[n]);
            }
        }
        assert!(matches!(m.evaluator(2), Err(Error::InvalidCombo(_))));
    }

    #[test]
    fn q_form_reproduces_terms() {
        let m = motzkin();
        let q = m.as_q_mod(7).unwrap();
        let base = Trinomial::central().to_poly();
        let ev = m.evaluator(7).unwrap();
        for n in 0..30 {
            let v = residue_big(&base.pow(n).mul(&q).ct(), 7);
            assert_eq!(v, ev.term_u64(n));
        }
    }
}
