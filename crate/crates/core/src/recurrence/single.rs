//! Single-term recurrence: given `n`, find `n' > n` with `a_{n'} ≡ a_n`
//! when no digit-table entry vanishes.
//!
//! Three digit edits, tried in order on a low window of the numeral:
//! 1. a more significant digit is smaller than a less significant one: swap them;
//! 2. a run of `p-1` equal digits `d < p-1`: raise all of them to `d+1`
//!    (both contribute `a^(p-1) ≡ 1`);
//! 3. a long run of `p-1` digits under a digit `m`: rewrite
//!    `m (p-1)^k γ` as `(m+1) 0^((q-1)(p-1)) m (m+1)^(p-2) (p-1)^r γ`
//!    with `k = q(p-1) + r`.
//!
//! The worst-case window is `p^(p-1) + 1` digits; we start with `p + 2`
//! digits and double, which settles realistic inputs immediately.

use serde::{Deserialize, Serialize};

use crate::digits::BasePDigits;
use crate::error::{Error, Result};
use crate::trinomial::{digit_table, DigitTable};
use crate::laurent::Trinomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum SingleCase {
    /// Digits at positions `high > low` exchanged.
    Swap { high: usize, low: usize },
    /// `p-1` digits starting at position `low` raised from `digit` to `digit+1`.
    RaiseRun { low: usize, digit: u32 },
    /// The `(p-1)`-run rewrite; `anchor` is the position of `m`.
    FermatRun { anchor: usize, m: u32, k: usize, q: usize, r: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleWitness {
    pub n: BasePDigits,
    pub n_prime: BasePDigits,
    pub case: SingleCase,
    /// Window size (in digits) at which the case was found.
    pub window: usize,
}

impl SingleWitness {
    /// Highest digit position the edit may touch.
    pub fn max_touched_position(&self) -> usize {
        match self.case {
            SingleCase::Swap { high, .. } => high,
            SingleCase::RaiseRun { low, .. } => low + self.n.p() as usize - 2,
            SingleCase::FermatRun { anchor, .. } => anchor,
        }
    }
}

/// `p^(p-1) + 1`, saturating.
pub fn single_window(p: u32) -> usize {
    (p as usize)
        .checked_pow(p - 1)
        .and_then(|v| v.checked_add(1))
        .unwrap_or(usize::MAX)
}

pub fn witness_single(tri: Trinomial, n: &BasePDigits) -> Result<SingleWitness> {
    let table = digit_table(tri, n.p() as u64)?;
    witness_single_with_table(&table, n)
}

pub fn witness_single_with_table(table: &DigitTable, n: &BasePDigits) -> Result<SingleWitness> {
    let p = table.p;
    assert_eq!(n.p(), p, "numeral base must match the table modulus");
    if let Some(z) = table.zero_digit {
        return Err(Error::HypothesisViolated { p, zero_digit: z });
    }
    let cap = single_window(p);
    let len = n.len();
    let mut w = len.min(p as usize + 2).min(cap).max(1);
    loop {
        let padded = n.padded(w);
        // low window, least significant first
        let low: Vec<u32> = (0..w).map(|pos| padded.digit_at(pos)).collect();

        if let Some((high, lo)) = find_swap(&low) {
            let mut digits = padded.digits().to_vec();
            let last = digits.len() - 1;
            digits.swap(last - high, last - lo);
            return finish(table, n, digits, SingleCase::Swap { high, low: lo }, w);
        }
        if let Some((start, d)) = find_raisable_run(&low, p) {
            let mut digits = padded.digits().to_vec();
            let last = digits.len() - 1;
            for pos in start..start + p as usize - 1 {
                digits[last - pos] = d + 1;
            }
            return finish(table, n, digits, SingleCase::RaiseRun { low: start, digit: d }, w);
        }
        // The window is now (p-1)^k0 γ with every digit of γ below p-1.
        let k0 = low.iter().rev().take_while(|&&d| d == p - 1).count();
        if k0 >= p as usize - 1 {
            return fermat_run(table, n, &padded, w - k0, w);
        }
        if w >= cap {
            return Err(Error::ConstructionBug(format!(
                "no edit found within the full window of {w} digits"
            )));
        }
        w = if w < len { (2 * w).min(len) } else { w + 1 }.min(cap);
    }
}

/// Largest position `i` with a larger digit somewhere below it, paired with
/// the largest such lower position.
fn find_swap(low: &[u32]) -> Option<(usize, usize)> {
    let mut max_below = None::<u32>;
    let mut high = None;
    for (pos, &d) in low.iter().enumerate() {
        if max_below.is_some_and(|m| m > d) {
            high = Some(pos);
        }
        max_below = Some(max_below.map_or(d, |m| m.max(d)));
    }
    let high = high?;
    let d = low[high];
    let lo = (0..high).rev().find(|&j| low[j] > d)?;
    Some((high, lo))
}

/// Lowest run of at least `p-1` equal digits `d < p-1`; returns its lowest position.
fn find_raisable_run(low: &[u32], p: u32) -> Option<(usize, u32)> {
    let need = p as usize - 1;
    let mut start = 0;
    while start < low.len() {
        let d = low[start];
        let end = start + low[start..].iter().take_while(|&&x| x == d).count();
        if d < p - 1 && end - start >= need {
            return Some((start, d));
        }
        start = end;
    }
    None
}

fn fermat_run(
    table: &DigitTable,
    n: &BasePDigits,
    padded: &BasePDigits,
    gamma_len: usize,
    w: usize,
) -> Result<SingleWitness> {
    let p = table.p;
    let split = match padded.decompose_tail(gamma_len) {
        Ok(s) => s,
        Err(Error::NoAnchorDigit) => padded.padded(padded.len() + 1).decompose_tail(gamma_len)?,
        Err(e) => return Err(e),
    };
    let pm1 = p as usize - 1;
    let (k, m) = (split.k, split.m);
    let (q, r) = (k / pm1, k % pm1);
    debug_assert!(q >= 1 && m < p - 1);

    let mut digits = split.head.digits().to_vec();
    digits.push(m + 1);
    digits.extend(std::iter::repeat_n(0, (q - 1) * pm1));
    digits.push(m);
    digits.extend(std::iter::repeat_n(m + 1, pm1 - 1));
    digits.extend(std::iter::repeat_n(p - 1, r));
    digits.extend_from_slice(split.tail.digits());
    let case = SingleCase::FermatRun {
        anchor: gamma_len + k,
        m,
        k,
        q,
        r,
    };
    finish(table, n, digits, case, w)
}

fn finish(
    table: &DigitTable,
    n: &BasePDigits,
    digits: Vec<u32>,
    case: SingleCase,
    window: usize,
) -> Result<SingleWitness> {
    let n_prime = BasePDigits::from_raw(table.p, digits);
    if n_prime <= *n || table.a_mod(&n_prime) != table.a_mod(n) {
        return Err(Error::ConstructionBug(format!(
            "{case:?} produced {n_prime} from {n} without preserving a_n"
        )));
    }
    Ok(SingleWitness {
        n: n.clone(),
        n_prime,
        case,
        window,
    })
}
