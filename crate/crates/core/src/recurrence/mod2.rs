//! Motzkin numbers mod 2, where the combination has divisor 2 and the
//! general construction does not apply. Ignoring the last binary digit,
//! `M_n mod 2` depends only on where the lowest `0` of `n` sits, so a word
//! of length `ℓ` is expected to recur after `2^(⌊log2 ℓ⌋+1)` or
//! `2^(⌊log2 ℓ⌋+2)`. That pair misses some starts (`i = 2, ℓ = 1` is the
//! smallest); `2^(⌊log2 ℓ⌋+3)` covers every case checked so far.

use num_bigint::BigInt;

use crate::combo::ComboSpec;
use crate::digits::BasePDigits;
use crate::error::{Error, Result};
use crate::laurent::{ConstantTermMod, LaurentPoly, Trinomial};

use super::word::{Strategy, WitnessInternals, WordWitness};

/// `P = x^-1 + 1 + x` with `Q = 1 - x^2` (or its mirror `1 - x^-2`).
pub fn is_motzkin(tri: Trinomial, q: &LaurentPoly) -> bool {
    let forward = LaurentPoly::from_terms([(0, 1), (2, -1)]);
    tri == Trinomial::central() && (*q == forward || *q == forward.reflect())
}

/// The combination `(3a_n + 2a_{n+1} - a_{n+2})/2` over `x^-1 + 1 + x`.
pub fn is_motzkin_combo(spec: &ComboSpec) -> bool {
    let want: Vec<BigInt> = [3, 2, -1].into_iter().map(BigInt::from).collect();
    spec.tri == Trinomial::central() && spec.divisor() == 2 && spec.coeffs() == want.as_slice()
}

/// `M_n mod 2` with an optional table for small indices.
#[derive(Clone, Debug)]
pub struct Mod2Witnesser {
    eval: ConstantTermMod,
    cache: Vec<u8>,
}

impl Default for Mod2Witnesser {
    fn default() -> Self {
        Self::new()
    }
}

impl Mod2Witnesser {
    pub fn new() -> Self {
        let q = LaurentPoly::from_terms([(0, 1), (2, -1)]);
        Mod2Witnesser {
            eval: ConstantTermMod::new(&Trinomial::central().to_poly(), &q, 2),
            cache: Vec::new(),
        }
    }

    /// Tabulates `M_n mod 2` for `n < bound`.
    pub fn with_table(bound: u64) -> Self {
        let mut w = Self::new();
        w.cache = (0..bound).map(|n| w.eval.eval_u64(n) as u8).collect();
        w
    }

    fn value(&self, n: &BasePDigits) -> u32 {
        match n.to_u64() {
            Some(v) if (v as usize) < self.cache.len() => self.cache[v as usize] as u32,
            _ => self.eval.eval(n),
        }
    }

    fn word(&self, start: &BasePDigits, length: usize) -> Vec<u32> {
        if let Some(s) = start.to_u64() {
            if (s as usize).saturating_add(length) <= self.cache.len() {
                return self.cache[s as usize..s as usize + length]
                    .iter()
                    .map(|&b| b as u32)
                    .collect();
            }
        }
        let mut idx = start.clone();
        let mut out = Vec::with_capacity(length);
        for t in 0..length {
            if t > 0 {
                idx = idx.add_u64(1);
            }
            out.push(self.value(&idx));
        }
        out
    }

    /// Tries `2^(⌊log2 ℓ⌋+1)` and `2^(⌊log2 ℓ⌋+2)`.
    pub fn witness(&self, start: &BasePDigits, length: usize) -> Result<WordWitness> {
        self.search(start, length, 2)
    }

    /// As [`witness`](Self::witness), then also `2^(⌊log2 ℓ⌋+3)`.
    pub fn witness_extended(&self, start: &BasePDigits, length: usize) -> Result<WordWitness> {
        self.search(start, length, 3)
    }

    fn search(&self, start: &BasePDigits, length: usize, tries: u32) -> Result<WordWitness> {
        if start.p() != 2 {
            return Err(Error::MismatchedModuli(start.p(), 2));
        }
        if length == 0 {
            return Err(Error::Inapplicable("word length must be positive".into()));
        }
        let word = self.word(start, length);
        let e = usize::BITS - length.leading_zeros(); // ⌊log2 ℓ⌋ + 1
        for exp in e..e + tries {
            let mut digits = vec![1u32];
            digits.extend(std::iter::repeat_n(0, exp as usize));
            let shift = BasePDigits::from_raw(2, digits);
            let moved = start.add(&shift)?;
            if self.word(&moved, length) == word {
                return Ok(WordWitness {
                    p: 2,
                    start: start.clone(),
                    length,
                    shift,
                    strategy: Strategy::Mod2Rule,
                    internals: WitnessInternals {
                        power: Some(exp),
                        ..WitnessInternals::default()
                    },
                    word,
                });
            }
        }
        Err(Error::ConstructionBug(format!(
            "no shift 2^{e}..2^{} reproduces the Motzkin word at {start} (length {length})",
            e + tries - 1
        )))
    }
}

/// `Δ ∈ {2^(⌊log2 ℓ⌋+1), 2^(⌊log2 ℓ⌋+2)}` reproducing `M_i … M_{i+ℓ-1} mod 2`,
/// or an error when neither does.
pub fn motzkin_mod2_witness(i: u64, length: usize) -> Result<u64> {
    let start = BasePDigits::from_u64_raw(i, 2);
    let w = Mod2Witnesser::new().witness(&start, length)?;
    Ok(w.shift.to_u64().expect("shift below 2^64"))
}
