//! Word recurrence: for a word `b_i … b_{i+ℓ-1}` mod p, construct a shift
//! `Δ` with `b_{i+t} ≡ b_{i+Δ+t}` for all `t < ℓ`.
//!
//! All a-indices involved lie in `[i, i+h+ℓ-1]`. Let `s` be the highest digit
//! position on which `i` and `i+h+ℓ-1` differ (so `p^s` is the largest power
//! with a multiple in `(i, i+h+ℓ)`), `β` the digit count of `h`, and `α ≥ 1`
//! the least value with `ℓ < p^(α(p-1)+β) - p^β`.
//!
//! - Prefix increment: every involved index shares its digits above `s`;
//!   replacing that prefix `u` by a single-term witness `u'` scales each
//!   a-value by `a_{u'}/a_u ≡ 1`.
//! - Fermat rewrite (when `k = s-β ≥ p` and `α < q` for `k = q(p-1)+r`): the
//!   indices straddle a multiple of `p^s` whose left neighbour reads
//!   `n* m (p-1)^k γ`; the shift `(m+1)^(p-1) 0^(α(p-1)+r+β)` turns both
//!   sides into digit strings with the same counts mod `p-1`.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::combo::{ComboMod, ComboSpec};
use crate::digits::BasePDigits;
use crate::error::{Error, Result};
use crate::modular::check_prime;

use super::single::{witness_single_with_table, SingleCase};
use super::zeros::span_digits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    PrefixIncrement,
    FermatRewrite,
    Mod2Rule,
    /// Every coefficient vanishes mod p; any shift works.
    ZeroSequence,
}

/// Quantities the construction was driven by.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessInternals {
    pub beta: usize,
    /// `None` when the word touches a single a-index (`h + ℓ = 1`).
    pub s: Option<usize>,
    pub alpha: u32,
    pub k: Option<usize>,
    pub q: Option<usize>,
    pub r: Option<usize>,
    /// Digit position above which the prefix was replaced (prefix increment).
    pub prefix_cutoff: Option<usize>,
    /// Single-term edit applied to the prefix (prefix increment).
    pub prefix_case: Option<SingleCase>,
    /// First index `n` with `n + h ≡ 0 mod p^s` (Fermat rewrite).
    pub anchor: Option<String>,
    /// Digit `m` above the `(p-1)`-run (Fermat rewrite).
    pub m: Option<u32>,
    /// Exponent `e` with `Δ = 2^e` (mod-2 rule).
    pub power: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordWitness {
    pub p: u32,
    pub start: BasePDigits,
    pub length: usize,
    pub shift: BasePDigits,
    pub strategy: Strategy,
    pub internals: WitnessInternals,
    /// `b_i … b_{i+ℓ-1} mod p`, checked equal at `i + Δ`.
    pub word: Vec<u32>,
}

impl WordWitness {
    /// SHA-256 over the checked word and the shift that reproduced it.
    pub fn transcript_hash(&self) -> String {
        transcript_hash(self.p, &self.start, self.length, &self.shift, &self.word)
    }

    pub fn to_record(&self) -> WitnessRecord {
        let note = match self.strategy {
            Strategy::PrefixIncrement if self.internals.s.is_some() => Some(
                "prefix taken above position s, where all involved indices agree".to_string(),
            ),
            _ => None,
        };
        WitnessRecord {
            p: self.p,
            start: self.start.to_string(),
            length: self.length,
            shift: self.shift.to_string(),
            shift_decimal: self.shift.to_biguint().to_string(),
            strategy: self.strategy,
            internals: self.internals.clone(),
            word: self.word.clone(),
            transcript_sha256: self.transcript_hash(),
            interpretation: note,
        }
    }
}

pub(crate) fn transcript_hash(
    p: u32,
    start: &BasePDigits,
    length: usize,
    shift: &BasePDigits,
    word: &[u32],
) -> String {
    let word: Vec<String> = word.iter().map(u32::to_string).collect();
    let text = format!(
        "p={p};start={start};len={length};shift={shift};word={}",
        word.join(",")
    );
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Serializable certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub p: u32,
    pub start: String,
    pub length: usize,
    pub shift: String,
    pub shift_decimal: String,
    pub strategy: Strategy,
    pub internals: WitnessInternals,
    pub word: Vec<u32>,
    pub transcript_sha256: String,
    pub interpretation: Option<String>,
}

/// `b_{i+t} ≡ b_{i+Δ+t}` for every `t < ℓ`.
pub fn verify_shift(ev: &ComboMod, start: &BasePDigits, length: usize, shift: &BasePDigits) -> bool {
    let moved = start.add(shift).expect("same modulus");
    ev.word(start, length) == ev.word(&moved, length)
}

fn pow_big(p: u32, e: usize) -> BigUint {
    BigUint::from(p).pow(e as u32)
}

/// Least `α ≥ 1` with `ℓ < p^(α(p-1)+β) - p^β`.
fn alpha_for(p: u32, beta: usize, length: usize) -> u32 {
    let l = BigUint::from(length);
    let pb = pow_big(p, beta);
    let mut alpha = 1u32;
    loop {
        let bound = pow_big(p, alpha as usize * (p as usize - 1) + beta) - &pb;
        if l < bound {
            return alpha;
        }
        alpha += 1;
    }
}

/// Highest position where `a` and `b` differ.
fn highest_difference(a: &BasePDigits, b: &BasePDigits) -> Option<usize> {
    let width = a.len().max(b.len());
    (0..width).rev().find(|&pos| a.digit_at(pos) != b.digit_at(pos))
}

pub fn witness_word(spec: &ComboSpec, p: u64, start: &BasePDigits, length: usize) -> Result<WordWitness> {
    let p32 = check_prime(p)?;
    if start.p() != p32 {
        return Err(Error::MismatchedModuli(start.p(), p32));
    }
    if length == 0 {
        return Err(Error::Inapplicable("word length must be positive".into()));
    }
    let ev = spec.evaluator(p)?;
    if let Some(z) = ev.table().zero_digit {
        return Err(Error::Inapplicable(format!(
            "p = {p} divides a_{z}: zeros have density 1 and runs are unbounded (use zero-run)"
        )));
    }
    let word = ev.word(start, length);
    let h = ev.span();
    let beta = span_digits(h as u64, p32);
    let alpha = alpha_for(p32, beta, length);
    let mut internals = WitnessInternals {
        beta,
        alpha,
        ..Default::default()
    };

    if ev.is_identically_zero() {
        let shift = BasePDigits::from_raw(p32, vec![1]);
        return finish(&ev, start, length, shift, Strategy::ZeroSequence, internals, word);
    }

    let end = start.add_u64((h + length - 1) as u64);
    let s = highest_difference(start, &end);
    internals.s = s;

    if let Some(s) = s {
        if s >= beta + p32 as usize {
            let k = s - beta;
            let pm1 = p32 as usize - 1;
            let (q, r) = (k / pm1, k % pm1);
            internals.k = Some(k);
            internals.q = Some(q);
            internals.r = Some(r);
            if (alpha as usize) < q {
                return fermat_rewrite(&ev, start, length, s, internals, word);
            }
        }
    }

    // Prefix increment above position s (or the whole index when h + ℓ = 1).
    let cutoff = s.map_or(0, |s| s + 1);
    let prefix = start.high_part(cutoff);
    let single = witness_single_with_table(ev.table(), &prefix)?;
    let delta = (single.n_prime.to_biguint() - prefix.to_biguint()) * pow_big(p32, cutoff);
    internals.prefix_cutoff = Some(cutoff);
    internals.prefix_case = Some(single.case);
    let shift = BasePDigits::from_biguint_raw(&delta, p32);
    finish(&ev, start, length, shift, Strategy::PrefixIncrement, internals, word)
}

fn fermat_rewrite(
    ev: &ComboMod,
    start: &BasePDigits,
    length: usize,
    s: usize,
    mut internals: WitnessInternals,
    word: Vec<u32>,
) -> Result<WordWitness> {
    let p = ev.p();
    let h = ev.span();
    let beta = internals.beta;
    let (k, r) = (internals.k.unwrap(), internals.r.unwrap());
    let alpha = internals.alpha as usize;
    let ps = pow_big(p, s);
    // the multiple of p^s inside (i, i+h+ℓ)
    let multiple = (start.to_biguint() / &ps + BigUint::one()) * &ps;
    // padded so that m = 0 is explicit when the multiple is p^s itself
    let before = BasePDigits::from_biguint_raw(&(&multiple - BigUint::one()), p).padded(s + 1);
    let split = before.decompose_tail(beta)?;
    if split.k != k {
        return Err(Error::ConstructionBug(format!(
            "expected a run of {k} digits p-1 above the low {beta} digits of {before}, found {}",
            split.k
        )));
    }
    let m = split.m;
    internals.anchor = Some(BasePDigits::from_biguint_raw(&(&multiple - BigUint::from(h)), p).to_string());
    internals.m = Some(m);

    let mut digits = vec![m + 1; p as usize - 1];
    digits.extend(std::iter::repeat_n(0, alpha * (p as usize - 1) + r + beta));
    let shift = BasePDigits::from_raw(p, digits);
    finish(ev, start, length, shift, Strategy::FermatRewrite, internals, word)
}

fn finish(
    ev: &ComboMod,
    start: &BasePDigits,
    length: usize,
    shift: BasePDigits,
    strategy: Strategy,
    internals: WitnessInternals,
    word: Vec<u32>,
) -> Result<WordWitness> {
    let moved = start.add(&shift)?;
    if shift.is_zero() || ev.word(&moved, length) != word {
        return Err(Error::ConstructionBug(format!(
            "{strategy:?} shift {shift} does not reproduce the word at {start} (length {length})"
        )));
    }
    Ok(WordWitness {
        p: ev.p(),
        start: start.clone(),
        length,
        shift,
        strategy,
        internals,
        word,
    })
}

/// Least `Δ ≤ horizon` with `b_{i+t} ≡ b_{i+Δ+t}` for all `t < ℓ`, by direct scan.
pub fn min_recurrence_oracle(
    spec: &ComboSpec,
    p: u64,
    start: u64,
    length: usize,
    horizon: u64,
) -> Result<Option<u64>> {
    let ev = spec.evaluator(p)?;
    start
        .checked_add(horizon)
        .and_then(|v| v.checked_add(length as u64 + ev.span() as u64))
        .ok_or_else(|| Error::BudgetExceeded("index range exceeds 64 bits".into()))?;
    if length == 0 {
        return Err(Error::Inapplicable("word length must be positive".into()));
    }
    const CHUNK: usize = 1 << 14;
    let mut values = ev.range_u64(start, length + CHUNK);
    let word = values[..length].to_vec();
    let mut delta = 1u64;
    while delta <= horizon {
        let d = delta as usize;
        if d + length > values.len() {
            let more = ev.range_u64(start + values.len() as u64, CHUNK);
            values.extend(more);
            continue;
        }
        if values[d..d + length] == word[..] {
            return Ok(Some(delta));
        }
        delta += 1;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::Trinomial;

    fn motzkin() -> ComboSpec {
        "P=1,1,1; c=3,2,-1; d=2".parse().unwrap()
    }

    fn num(s: &str, p: u64) -> BasePDigits {
        BasePDigits::parse(s, p).unwrap()
    }

    #[test]
    fn worked_prefix_shift_is_accepted() {
        let ev = motzkin().evaluator(5).unwrap();
        let i = BasePDigits::from_u64(75156245, 5).unwrap();
        let delta = BasePDigits::from_u64(7 * 5u64.pow(8), 5).unwrap();
        assert!(verify_shift(&ev, &i, 1, &delta));
        // the printed index 123214444443 (= 75156248) as well
        assert!(verify_shift(&ev, &num("123214444443", 5), 1, &delta));
    }

    #[test]
    fn fermat_at_a_pure_power() {
        // i = 5^10 - 19 crosses 5^10, whose left neighbour is all 4s
        let spec = ComboSpec::single(Trinomial::central());
        let start = BasePDigits::from_u64(9765606, 5).unwrap();
        let w = witness_word(&spec, 5, &start, 28).unwrap();
        assert_eq!(w.strategy, Strategy::FermatRewrite);
        assert_eq!(w.internals.m, Some(0));
        assert_eq!(w.shift.to_string(), format!("1111{}", "0".repeat(6)));
    }

    #[test]
    fn worked_fermat_shift_is_accepted() {
        let ev = motzkin().evaluator(5).unwrap();
        let from = num("123214444443", 5);
        let to = num("123222221443", 5);
        let delta = BasePDigits::from_biguint(&(to.to_biguint() - from.to_biguint()), 5).unwrap();
        assert_eq!(delta.to_string(), "2222000");
        assert!(verify_shift(&ev, &from, 1, &delta));
        // every m from 123214444000 through 123220000442 (m+2 stays below 123220001000)
        let lo = num("123214444000", 5).to_u64().unwrap();
        let hi = num("123220000443", 5).to_u64().unwrap();
        let d = delta.to_u64().unwrap();
        let base = ev.range_u64(lo, (hi - lo + 1) as usize);
        let moved = ev.range_u64(lo + d, (hi - lo + 1) as usize);
        let bad: Vec<u64> = (0..base.len()).filter(|&t| base[t] != moved[t]).map(|t| lo + t as u64).collect();
        assert_eq!(bad, vec![hi]);
    }

    #[test]
    fn single_character_word_at_zero() {
        let w = witness_word(&motzkin(), 5, &num("0", 5), 1).unwrap();
        let ev = motzkin().evaluator(5).unwrap();
        assert!(verify_shift(&ev, &w.start, 1, &w.shift));
        assert_eq!(w.strategy, Strategy::PrefixIncrement);
        let w = witness_word(&ComboSpec::single(Trinomial::central()), 5, &num("0", 5), 1).unwrap();
        assert_eq!(w.internals.s, None);
        assert_eq!(w.internals.prefix_cutoff, Some(0));
    }

    #[test]
    fn fermat_strategy_structure() {
        // i just below 2·5^9 with a word straddling it
        let i = 2 * 5u64.pow(9) - 3;
        let w = witness_word(&motzkin(), 5, &BasePDigits::from_u64(i, 5).unwrap(), 10).unwrap();
        assert_eq!(w.strategy, Strategy::FermatRewrite);
        assert_eq!(w.internals.s, Some(9));
        assert_eq!((w.internals.k, w.internals.q, w.internals.r), (Some(8), Some(2), Some(0)));
        // m = 1 (digit above the run), so Δ = 2222 0^(4+0+1)
        assert_eq!(w.shift.to_string(), "222200000");
    }

    #[test]
    fn inapplicable_for_zero_digit() {
        assert!(matches!(
            witness_word(&motzkin(), 3, &num("1", 3), 2),
            Err(Error::Inapplicable(_))
        ));
    }

    #[test]
    fn zero_combination_shifts_by_one() {
        let spec: ComboSpec = "P=1,1,1; c=5,10; d=1".parse().unwrap();
        let w = witness_word(&spec, 5, &num("3", 5), 4).unwrap();
        assert_eq!((w.strategy, w.shift.to_string()), (Strategy::ZeroSequence, "1".to_string()));
    }

    #[test]
    fn oracle_finds_period() {
        // a_n = 2^n has period 4 mod 5
        let spec = ComboSpec::single(Trinomial::new(0, 2, 0).unwrap());
        assert_eq!(min_recurrence_oracle(&spec, 5, 3, 6, 100).unwrap(), Some(4));
        assert_eq!(min_recurrence_oracle(&spec, 5, 3, 6, 3).unwrap(), None);
    }

    #[test]
    fn oracle_is_below_constructed_shift() {
        let ev = motzkin().evaluator(5).unwrap();
        for i in [0u64, 17, 600, 3120] {
            for len in [1usize, 5, 20] {
                let w = witness_word(&motzkin(), 5, &BasePDigits::from_u64(i, 5).unwrap(), len).unwrap();
                let d = w.shift.to_u64().unwrap();
                let min = min_recurrence_oracle(&motzkin(), 5, i, len, d).unwrap().unwrap();
                assert!(min <= d);
                assert!(verify_shift(&ev, &w.start, len, &BasePDigits::from_u64(min, 5).unwrap()));
            }
        }
    }
}
