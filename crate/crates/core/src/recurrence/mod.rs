//! Classification of a combination mod p and the certificates behind it.
//!
//! A prime either divides one of `a_0 … a_{p-1}` (then zeros have density 1
//! and arbitrarily long zero runs exist) or it divides none of them (then
//! every word recurs, certified by an explicit shift).

mod mod2;
mod single;
mod word;
mod zeros;

pub use mod2::{is_motzkin, is_motzkin_combo, motzkin_mod2_witness, Mod2Witnesser};
pub use single::{single_window, witness_single, witness_single_with_table, SingleCase, SingleWitness};
pub use word::{
    min_recurrence_oracle, verify_shift, witness_word, Strategy, WitnessInternals, WitnessRecord,
    WordWitness,
};
pub use zeros::{density_lower_bound, density_measure, span_digits, zero_run, DensityReport, ZeroRun};

use serde::{Deserialize, Serialize};

use crate::combo::ComboSpec;
use crate::error::Result;
use crate::modular::check_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    UniformlyRecurrent,
    ZeroDensityOne,
}

/// What the verdict rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    DigitTable,
    /// Motzkin numbers mod 2, decided by the binary-digit rule.
    Mod2Rule,
    /// `p | a1`: `b_n ≡ a0^n·ct[Q]`.
    Periodic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub p: u32,
    pub verdict: Verdict,
    pub zero_digit: Option<u32>,
    pub basis: Basis,
    /// `a_0 … a_{p-1} mod p` of the underlying trinomial.
    pub digit_table: Vec<u32>,
}

/// Verdict from the digit table of `spec.tri`; the divisor must be a unit mod `p`.
pub fn classify(spec: &ComboSpec, p: u64) -> Result<Classification> {
    let p32 = check_prime(p)?;
    let ev = spec.evaluator(p)?;
    let table = ev.table();
    Ok(Classification {
        p: p32,
        verdict: if table.has_zero() {
            Verdict::ZeroDensityOne
        } else {
            Verdict::UniformlyRecurrent
        },
        zero_digit: table.zero_digit,
        basis: Basis::DigitTable,
        digit_table: table.values.clone(),
    })
}

/// The Motzkin numbers mod 2: recurrent (the digit table of `x^-1+1+x` mod 2 is `(1, 1)`).
pub fn classify_motzkin_mod2() -> Classification {
    Classification {
        p: 2,
        verdict: Verdict::UniformlyRecurrent,
        zero_digit: None,
        basis: Basis::Mod2Rule,
        digit_table: vec![1, 1],
    }
}

/// Verdict for the periodic branch `b_n ≡ a0^n·ct[Q] (mod p)`. Only
/// `a0 ≡ 0 ≢ ct[Q]` fails, leaving a single nonzero term at `n = 0`.
pub fn classify_periodic(p: u32, alpha0: u32, ct_q: u32) -> Classification {
    let lonely = alpha0 == 0 && ct_q != 0;
    Classification {
        p,
        verdict: if lonely {
            Verdict::ZeroDensityOne
        } else {
            Verdict::UniformlyRecurrent
        },
        zero_digit: None,
        basis: Basis::Periodic,
        digit_table: Vec::new(),
    }
}
