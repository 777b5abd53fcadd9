//! Small-prime residue helpers shared by the fast paths.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Deterministic trial division; moduli here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Validates `p` as a prime that fits the residue arithmetic (`p < 2^31`).
pub fn check_prime(p: u64) -> Result<u32> {
    if p < (1 << 31) && is_prime(p) {
        Ok(p as u32)
    } else {
        Err(Error::InvalidModulus(p))
    }
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow_mod(base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    let mut b = base % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        exp >>= 1;
    }
    acc
}

/// Inverse by Fermat; `None` for residues divisible by `p`.
pub fn inv_mod(a: u32, p: u32) -> Option<u32> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(pow_mod(a, (p - 2) as u64, p))
    }
}

pub fn residue_i64(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

pub fn residue_big(x: &BigInt, p: u32) -> u32 {
    x.mod_floor(&BigInt::from(p))
        .to_u32()
        .expect("residue below p fits in u32")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_by_trial_division() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(check_prime(1).is_err());
        assert!(check_prime(91).is_err());
        assert_eq!(check_prime(197), Ok(197));
    }

    #[test]
    fn inverses() {
        for p in [2u32, 3, 5, 7, 13, 31] {
            for a in 1..p {
                assert_eq!(mul_mod(a, inv_mod(a, p).unwrap(), p), 1);
            }
            assert_eq!(inv_mod(0, p), None);
        }
        assert_eq!(residue_i64(-1, 5), 4);
        assert_eq!(residue_big(&BigInt::from(-7), 5), 3);
    }
}
