//! Base-p numerals stored most-significant digit first.
//!
//! Indices handled by the witness constructions can run to thousands of
//! digits, so every digit-level edit operates on the digit string itself.
//! Leading zeros are kept as given; only comparisons and conversion to
//! integers look through them.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modular::check_prime;

#[derive(Clone, Debug)]
pub struct BasePDigits {
    p: u32,
    digits: Vec<u32>,
}

/// `head · m · (p-1)^k · tail`, the split produced by [`BasePDigits::decompose_tail`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailSplit {
    pub head: BasePDigits,
    pub m: u32,
    pub k: usize,
    pub tail: BasePDigits,
}

impl BasePDigits {
    pub fn new(p: u64, digits: Vec<u32>) -> Result<Self> {
        let p = check_prime(p)?;
        if digits.is_empty() {
            return Err(Error::MalformedNumeral("empty digit string".into()));
        }
        if let Some(bad) = digits.iter().find(|&&d| d >= p) {
            return Err(Error::MalformedNumeral(format!("digit {bad} is not below {p}")));
        }
        Ok(BasePDigits { p, digits })
    }

    /// Builds a numeral for an already validated prime. Empty input means zero.
    pub(crate) fn from_raw(p: u32, mut digits: Vec<u32>) -> Self {
        debug_assert!(digits.iter().all(|&d| d < p));
        if digits.is_empty() {
            digits.push(0);
        }
        BasePDigits { p, digits }
    }

    pub fn zero(p: u64) -> Result<Self> {
        Self::new(p, vec![0])
    }

    pub fn from_u64(n: u64, p: u64) -> Result<Self> {
        let p = check_prime(p)?;
        Ok(Self::from_u64_raw(n, p))
    }

    pub(crate) fn from_u64_raw(mut n: u64, p: u32) -> Self {
        if n == 0 {
            return BasePDigits { p, digits: vec![0] };
        }
        let mut digits = Vec::new();
        while n > 0 {
            digits.push((n % p as u64) as u32);
            n /= p as u64;
        }
        digits.reverse();
        BasePDigits { p, digits }
    }

    /// Positional expansion of `n`; no leading zeros except for `n = 0`.
    pub fn from_biguint(n: &BigUint, p: u64) -> Result<Self> {
        let p = check_prime(p)?;
        Ok(Self::from_biguint_raw(n, p))
    }

    pub(crate) fn from_biguint_raw(n: &BigUint, p: u32) -> Self {
        if n.is_zero() {
            return BasePDigits { p, digits: vec![0] };
        }
        let digits = if p <= 256 {
            n.to_radix_be(p).into_iter().map(u32::from).collect()
        } else {
            let mut rest = n.clone();
            let mut out = Vec::new();
            let base = BigUint::from(p);
            while !rest.is_zero() {
                out.push((&rest % &base).to_u32().unwrap());
                rest /= &base;
            }
            out.reverse();
            out
        };
        BasePDigits { p, digits }
    }

    /// Parses the textual form: plain juxtaposition for `p <= 10`, decimal
    /// digits joined by `.` otherwise.
    pub fn parse(text: &str, p: u64) -> Result<Self> {
        let p32 = check_prime(p)?;
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::MalformedNumeral("empty numeral".into()));
        }
        let digits: Vec<u32> = if p32 <= 10 {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::MalformedNumeral(format!("bad digit {c:?} in {text:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            text.split('.')
                .map(|part| {
                    part.parse::<u32>()
                        .map_err(|_| Error::MalformedNumeral(format!("bad digit {part:?} in {text:?}")))
                })
                .collect::<Result<_>>()?
        };
        Self::new(p, digits)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Digits, most significant first, leading zeros included.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    /// Digit at `pos`, counting from the least significant end; zero past the top.
    pub fn digit_at(&self, pos: usize) -> u32 {
        if pos < self.digits.len() {
            self.digits[self.digits.len() - 1 - pos]
        } else {
            0
        }
    }

    /// Copy with leading zeros removed (keeps a single `0` for zero).
    pub fn normalized(&self) -> Self {
        let first = self
            .digits
            .iter()
            .position(|&d| d != 0)
            .unwrap_or(self.digits.len() - 1);
        BasePDigits::from_raw(self.p, self.digits[first..].to_vec())
    }

    /// Left-pads with zeros to at least `len` digits.
    pub fn padded(&self, len: usize) -> Self {
        if self.digits.len() >= len {
            return self.clone();
        }
        let mut digits = vec![0; len - self.digits.len()];
        digits.extend_from_slice(&self.digits);
        BasePDigits { p: self.p, digits }
    }

    pub fn to_biguint(&self) -> BigUint {
        if self.p <= 256 {
            let bytes: Vec<u8> = self.digits.iter().map(|&d| d as u8).collect();
            BigUint::from_radix_be(&bytes, self.p).expect("digits validated below p")
        } else {
            self.digits
                .iter()
                .fold(BigUint::zero(), |acc, &d| acc * self.p + d)
        }
    }

    /// Value as `u64` when it fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.digits.iter().try_fold(0u64, |acc, &d| {
            acc.checked_mul(self.p as u64)?.checked_add(d as u64)
        })
    }

    /// Digits at positions `>= pos` (the value `floor(n / p^pos)`).
    pub fn high_part(&self, pos: usize) -> Self {
        let len = self.digits.len();
        if pos >= len {
            return BasePDigits::from_raw(self.p, vec![0]);
        }
        BasePDigits::from_raw(self.p, self.digits[..len - pos].to_vec())
    }

    /// Exactly `pos` low digits (zero-padded), i.e. `n mod p^pos`.
    pub fn low_part(&self, pos: usize) -> Vec<u32> {
        (0..pos).rev().map(|i| self.digit_at(i)).collect()
    }

    /// `self * p^pos + low`, where `low` holds exactly `pos` digits.
    pub fn with_low(&self, low: &[u32]) -> Self {
        let mut digits = self.digits.clone();
        digits.extend_from_slice(low);
        BasePDigits { p: self.p, digits }
    }

    /// Digit-string addition with carries.
    pub fn add(&self, other: &BasePDigits) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::MismatchedModuli(self.p, other.p));
        }
        let width = self.len().max(other.len());
        let mut out = Vec::with_capacity(width + 1);
        let mut carry = 0u32;
        for pos in 0..width {
            let s = self.digit_at(pos) + other.digit_at(pos) + carry;
            out.push(s % self.p);
            carry = s / self.p;
        }
        if carry > 0 {
            out.push(carry);
        }
        out.reverse();
        Ok(BasePDigits::from_raw(self.p, out))
    }

    pub fn add_u64(&self, n: u64) -> Self {
        self.add(&BasePDigits::from_u64_raw(n, self.p))
            .expect("same modulus")
    }

    /// Splits `self = head · m · (p-1)^k · tail` with `|tail| = suffix_len`,
    /// `k` the length of the maximal run of `p-1` directly above the tail and
    /// `m != p-1` the digit above that run. Without a run, `k = 0` and `m` is
    /// the lowest digit above the tail.
    pub fn decompose_tail(&self, suffix_len: usize) -> Result<TailSplit> {
        let len = self.digits.len();
        if suffix_len >= len {
            return Err(Error::NoAnchorDigit);
        }
        let top = self.p - 1;
        let above = &self.digits[..len - suffix_len];
        let k = above.iter().rev().take_while(|&&d| d == top).count();
        if k == above.len() {
            return Err(Error::NoAnchorDigit);
        }
        let m_idx = above.len() - 1 - k;
        Ok(TailSplit {
            head: BasePDigits::from_raw_keep_empty(self.p, above[..m_idx].to_vec()),
            m: above[m_idx],
            k,
            tail: BasePDigits::from_raw_keep_empty(self.p, self.digits[len - suffix_len..].to_vec()),
        })
    }

    /// Internal constructor that allows the empty word (used for split parts).
    fn from_raw_keep_empty(p: u32, digits: Vec<u32>) -> Self {
        BasePDigits { p, digits }
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        let a = self.significant();
        let b = other.significant();
        a.len().cmp(&b.len()).then_with(|| a.cmp(b))
    }

    fn significant(&self) -> &[u32] {
        let first = self
            .digits
            .iter()
            .position(|&d| d != 0)
            .unwrap_or(self.digits.len());
        &self.digits[first..]
    }

    /// Number of digits of the empty word is allowed only for split parts.
    pub fn is_empty_word(&self) -> bool {
        self.digits.is_empty()
    }
}

impl PartialEq for BasePDigits {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.significant() == other.significant()
    }
}

impl Eq for BasePDigits {}

impl Hash for BasePDigits {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.significant().hash(state);
    }
}

impl PartialOrd for BasePDigits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BasePDigits {
    fn cmp(&self, other: &Self) -> Ordering {
        self.p.cmp(&other.p).then_with(|| self.cmp_value(other))
    }
}

impl fmt::Display for BasePDigits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p <= 10 {
            for d in &self.digits {
                write!(f, "{d}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.digits.iter().map(u32::to_string).collect();
            f.write_str(&parts.join("."))
        }
    }
}
