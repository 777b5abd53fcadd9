//! Generalized central trinomial coefficients `a_n = ct[P(x)^n]`.
//!
//! The exact oracle walks the coefficient triangle one row at a time; the
//! fast path multiplies digit-table entries over the base-p digits of `n`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::digits::BasePDigits;
use crate::error::{Error, Result};
use crate::laurent::Trinomial;
use crate::modular::{check_prime, mul_mod, residue_i64};

/// Rows of the triangle of `P(x)^n`: `row[j]` is the coefficient of `x^(j - n)`.
#[derive(Clone, Debug)]
pub struct TriangleRows {
    tri: Trinomial,
    row: Vec<BigInt>,
    n: u64,
}

impl TriangleRows {
    pub fn new(tri: Trinomial) -> Self {
        TriangleRows {
            tri,
            row: vec![BigInt::from(1)],
            n: 0,
        }
    }

    /// Exponent of the current row.
    pub fn index(&self) -> u64 {
        self.n
    }

    pub fn row(&self) -> &[BigInt] {
        &self.row
    }

    /// `a_{n,i} = ct[P^n · x^i]`, the coefficient of `x^-i` in the current row.
    pub fn side(&self, i: i64) -> BigInt {
        let idx = self.n as i64 - i;
        if idx < 0 || idx as usize >= self.row.len() {
            BigInt::zero()
        } else {
            self.row[idx as usize].clone()
        }
    }

    pub fn central(&self) -> &BigInt {
        &self.row[self.n as usize]
    }

    /// Advances to the next power: each entry gathers `am1` from the right
    /// neighbour, `a0` from itself and `a1` from the left neighbour.
    pub fn advance(&mut self) {
        let old = &self.row;
        let len = old.len() + 2;
        let (am1, a0, a1) = (
            BigInt::from(self.tri.am1),
            BigInt::from(self.tri.a0),
            BigInt::from(self.tri.a1),
        );
        let mut next = vec![BigInt::zero(); len];
        for (j, c) in old.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // old exponent e = j - n lands on e-1, e, e+1, i.e. slots j, j+1, j+2.
            next[j] += &am1 * c;
            next[j + 1] += &a0 * c;
            next[j + 2] += &a1 * c;
        }
        self.row = next;
        self.n += 1;
    }
}

/// Exact `a_n`.
pub fn a_oracle(tri: Trinomial, n: u64) -> BigInt {
    let mut rows = TriangleRows::new(tri);
    for _ in 0..n {
        rows.advance();
    }
    rows.central().clone()
}

/// Exact `a_0, …, a_{count-1}`.
pub fn a_oracle_prefix(tri: Trinomial, count: usize) -> Vec<BigInt> {
    let mut rows = TriangleRows::new(tri);
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        if k > 0 {
            rows.advance();
        }
        out.push(rows.central().clone());
    }
    out
}

/// `a_0 … a_{p-1}` reduced mod `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitTable {
    pub p: u32,
    pub values: Vec<u32>,
    pub zero_digit: Option<u32>,
}

impl DigitTable {
    /// Lucas-style product `∏ a_{n_p[i]} mod p` over all digits of `n`.
    pub fn a_mod(&self, n: &BasePDigits) -> u32 {
        assert_eq!(n.p(), self.p, "numeral base must match the table modulus");
        let mut acc = 1 % self.p;
        for &d in n.digits() {
            acc = mul_mod(acc, self.values[d as usize], self.p);
            if acc == 0 {
                break;
            }
        }
        acc
    }

    pub fn a_mod_u64(&self, mut n: u64) -> u32 {
        let p = self.p as u64;
        let mut acc = 1 % self.p;
        while n > 0 {
            acc = mul_mod(acc, self.values[(n % p) as usize], self.p);
            n /= p;
        }
        acc
    }

    /// `a_m mod p` for every `m < count`, built as `A[m] = A[m div p]·a_{m mod p}`.
    pub fn a_mod_prefix(&self, count: usize) -> Vec<u32> {
        let p = self.p as usize;
        let mut out = Vec::with_capacity(count);
        for m in 0..count {
            let v = if m < p {
                self.values[m]
            } else {
                mul_mod(out[m / p], self.values[m % p], self.p)
            };
            out.push(v);
        }
        out
    }

    pub fn has_zero(&self) -> bool {
        self.zero_digit.is_some()
    }
}

fn compute_table(tri: Trinomial, p: u32) -> DigitTable {
    // The same triangle as the exact oracle, carried in residues.
    let (am1, a0, a1) = (residue_i64(tri.am1, p), residue_i64(tri.a0, p), residue_i64(tri.a1, p));
    let mut row = vec![1 % p];
    let mut values = Vec::with_capacity(p as usize);
    for n in 0..p as usize {
        values.push(row[n]);
        let mut next = vec![0u32; row.len() + 2];
        for (j, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            next[j] = (next[j] + mul_mod(am1, c, p)) % p;
            next[j + 1] = (next[j + 1] + mul_mod(a0, c, p)) % p;
            next[j + 2] = (next[j + 2] + mul_mod(a1, c, p)) % p;
        }
        row = next;
    }
    let zero_digit = values.iter().position(|&v| v == 0).map(|z| z as u32);
    DigitTable { p, values, zero_digit }
}

type TableCache = Mutex<HashMap<(Trinomial, u32), Arc<DigitTable>>>;

fn cache() -> &'static TableCache {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Residues `a_0 … a_{p-1}` and the least zero position, cached per `(P, p)`.
pub fn digit_table(tri: Trinomial, p: u64) -> Result<Arc<DigitTable>> {
    let p = check_prime(p)?;
    if let Some(hit) = cache().lock().expect("table cache poisoned").get(&(tri, p)) {
        return Ok(Arc::clone(hit));
    }
    // Computed outside the lock; a racing insert stores an identical table.
    let table = Arc::new(compute_table(tri, p));
    cache()
        .lock()
        .expect("table cache poisoned")
        .entry((tri, p))
        .or_insert_with(|| Arc::clone(&table));
    Ok(table)
}

/// `a_n mod p` for a numeral of any length.
pub fn a_mod(tri: Trinomial, n: &BasePDigits) -> u32 {
    digit_table(tri, n.p() as u64)
        .expect("numeral modulus is prime")
        .a_mod(n)
}

/// Folds away the zero odd-power terms when `a0 = 0`:
/// `ct[P^{2n}] = ct[(am1²·x^-1 + 2·am1·a1 + a1²·x)^n]`.
pub fn even_fold(tri: Trinomial) -> Result<Trinomial> {
    if tri.a0 != 0 {
        return Err(Error::InapplicableFold(tri.a0));
    }
    let overflow = || Error::UnsupportedShape(format!("folding {tri} overflows i64"));
    let sq_m = tri.am1.checked_mul(tri.am1).ok_or_else(overflow)?;
    let cross = tri
        .am1
        .checked_mul(tri.a1)
        .and_then(|c| c.checked_mul(2))
        .ok_or_else(overflow)?;
    let sq_p = tri.a1.checked_mul(tri.a1).ok_or_else(overflow)?;
    Trinomial::new(sq_m, cross, sq_p)
}
