//! Zero runs and zero density when a digit-table entry vanishes.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::combo::{ComboMod, ComboSpec};
use crate::digits::BasePDigits;
use crate::error::{Error, Result};
use crate::modular::{check_prime, mul_mod};

/// Terms checked inside [`zero_run`]; longer runs are reported as partially verified.
const RUN_VERIFY_LIMIT: u64 = 1 << 16;
/// Largest scan [`density_measure`] accepts.
const DENSITY_LIMIT: u64 = 100_000_000;

/// Number of base-p digits of `h` (0 for `h = 0`).
pub fn span_digits(h: u64, p: u32) -> usize {
    let mut digits = 0;
    let mut rest = h;
    while rest > 0 {
        rest /= p as u64;
        digits += 1;
    }
    digits
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroRun {
    pub p: u32,
    pub z: u32,
    pub k: u32,
    /// `z·p^k`, the word `z 0^k`.
    pub start: BasePDigits,
    /// `p^(k-1)`.
    pub length: BigUint,
    /// Leading terms of the run re-evaluated through the digit table.
    pub verified_terms: u64,
}

/// Every `b_n` with `n` in `[z·p^k, z·p^k + p^(k-1))` vanishes mod `p`:
/// all of `n … n+h` keep the digit `z` at position `k`.
pub fn zero_run(spec: &ComboSpec, p: u64, k: u32) -> Result<ZeroRun> {
    let p32 = check_prime(p)?;
    let ev = spec.evaluator(p)?;
    let z = ev.table().zero_digit.ok_or_else(|| {
        Error::Inapplicable(format!(
            "p = {p} divides no a_n; the sequence is uniformly recurrent (use witness)"
        ))
    })?;
    let h = BigUint::from(ev.span());
    let length = BigUint::from(p).pow(k.saturating_sub(1));
    if k == 0 || length <= h {
        return Err(Error::Inapplicable(format!(
            "k = {k} is too small: need p^(k-1) > h = {h}"
        )));
    }
    let mut digits = vec![z];
    digits.extend(std::iter::repeat_n(0, k as usize));
    let start = BasePDigits::from_raw(p32, digits);

    let check = length.to_u64().map_or(RUN_VERIFY_LIMIT, |l| l.min(RUN_VERIFY_LIMIT));
    let word = ev.word(&start, check as usize);
    if let Some(t) = word.iter().position(|&v| v != 0) {
        return Err(Error::ConstructionBug(format!(
            "b at {start} + {t} is {} mod {p}",
            word[t]
        )));
    }
    Ok(ZeroRun {
        p: p32,
        z,
        k,
        start,
        length,
        verified_terms: check,
    })
}

/// `1 - (p^β / (p-1)^β)·((p-1)/p)^k` with `β` the digit count of `h`.
pub fn density_lower_bound(p: u64, h: u64, k: u32) -> Result<BigRational> {
    let p32 = check_prime(p)?;
    let beta = span_digits(h, p32) as u32;
    if k <= beta {
        return Err(Error::Inapplicable(format!(
            "density bound needs k > β = {beta}, got k = {k}"
        )));
    }
    let pb = BigInt::from(p);
    let num = pb.pow(beta) * BigInt::from(p - 1).pow(k - beta);
    let den = pb.pow(k);
    Ok(BigRational::one() - BigRational::new(num, den))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub zeros: u64,
    pub total: u64,
    pub fraction: BigRational,
}

/// Exact fraction of `n < p^k` with `b_n ≡ 0 (mod p)`.
pub fn density_measure(spec: &ComboSpec, p: u64, k: u32) -> Result<DensityReport> {
    check_prime(p)?;
    let ev = spec.evaluator(p)?;
    let total = p
        .checked_pow(k)
        .filter(|&t| t <= DENSITY_LIMIT)
        .ok_or_else(|| Error::BudgetExceeded(format!("{p}^{k} terms exceed {DENSITY_LIMIT}")))?;
    let zeros = count_zeros(&ev, total);
    Ok(DensityReport {
        zeros,
        total,
        fraction: BigRational::new(BigInt::from(zeros), BigInt::from(total)),
    })
}

/// Splits `[0, total)` into blocks of `p^c` sharing a high part and counts in parallel.
fn count_zeros(ev: &ComboMod, total: u64) -> u64 {
    let p = ev.p() as u64;
    let mut block = 1u64;
    while block * p <= total.min(1 << 16) {
        block *= p;
    }
    let low = ev.table().a_mod_prefix(block as usize);
    let blocks = total.div_ceil(block);
    let workers = std::thread::available_parallelism()
        .map(|n| n.get() as u64)
        .unwrap_or(1)
        .min(blocks)
        .max(1);
    let per = blocks.div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let low = &low;
                scope.spawn(move || {
                    let end = ((w + 1) * per).min(blocks);
                    (w * per..end)
                        .map(|hi| count_block(ev, low, hi, block, total))
                        .sum::<u64>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("density worker")).sum()
    })
}

fn count_block(ev: &ComboMod, low: &[u32], hi: u64, block: u64, total: u64) -> u64 {
    let p = ev.p();
    let table = ev.table();
    let here = table.a_mod_u64(hi);
    let next = table.a_mod_u64(hi + 1);
    let h = ev.span();
    let a_at = |r: u64| -> u32 {
        if r < block {
            mul_mod(here, low[r as usize], p)
        } else {
            mul_mod(next, low[(r - block) as usize], p)
        }
    };
    let start = hi * block;
    let len = block.min(total - start);
    let mut window: Vec<u32> = (0..=h as u64).map(a_at).collect();
    let mut zeros = 0;
    for r in 0..len {
        if r > 0 {
            window.rotate_left(1);
            window[h] = a_at(r + h as u64);
        }
        if ev.combine(&window) == 0 {
            zeros += 1;
        }
    }
    zeros
}
