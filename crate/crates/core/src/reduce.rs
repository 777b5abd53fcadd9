//! Rewriting `b_n = ct[P(x)^n Q(x)]` for symmetric `P` as a combination of
//! shifted central coefficients `a_{n+i}`.
//!
//! With `a_{n,i} = ct[P^n x^i]`, one more row of the triangle gives
//! `a_{n+i,0} = a_{i,0}·a_{n,0} + Σ_{j=1..i} 2·a_{i,j}·a_{n,j}`, and
//! `a_{i,i} = a1^i` lets the top term be solved for. Applying this
//! triangularly expresses every `a_{n,i}` through `a_n … a_{n+i}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combo::ComboSpec;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Trinomial};
use crate::modular::{check_prime, inv_mod, mul_mod, pow_mod, residue_big, residue_i64};
use crate::trinomial::TriangleRows;

/// Outcome of [`reduce_q`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionResult {
    Combo(ComboSpec),
    /// `p | a1`: `b_n ≡ a0^n · ct[Q] (mod p)`.
    Periodic { p: u32, alpha0: u32, ct_q: u32 },
}

impl ReductionResult {
    pub fn combo(&self) -> Option<&ComboSpec> {
        match self {
            ReductionResult::Combo(c) => Some(c),
            ReductionResult::Periodic { .. } => None,
        }
    }
}

/// Residues of the periodic branch for `n`.
pub fn periodic_term(alpha0: u32, ct_q: u32, p: u32, n: u64) -> u32 {
    mul_mod(pow_mod(alpha0, n, p), ct_q, p)
}

fn require_symmetric(tri: Trinomial) -> Result<()> {
    if tri.is_symmetric() {
        Ok(())
    } else {
        Err(Error::UnsupportedShape(format!(
            "reduction needs a symmetric trinomial, got P = {tri}"
        )))
    }
}

/// Residue vector `v` with `a_{n,i} ≡ Σ_k v[k]·a_{n+k} (mod p)` for all `n`.
pub fn side_coeff_combo(tri: Trinomial, i: usize, p: u64) -> Result<Vec<u32>> {
    require_symmetric(tri)?;
    let p32 = check_prime(p)?;
    let twice_a1 = tri.a1.saturating_mul(2);
    if residue_i64(tri.a1, p32) == 0 || p32 == 2 {
        return Err(Error::DegenerateSide { p: p32, twice_a1 });
    }
    let two_a1_inv = inv_mod(mul_mod(2, residue_i64(tri.a1, p32), p32), p32).expect("unit");

    let mut vecs: Vec<Vec<u32>> = vec![unit_vec(0, i + 1)];
    let mut rows = TriangleRows::new(tri);
    let mut scale = 1u32; // (2·a1)^-t
    for t in 1..=i {
        rows.advance();
        scale = mul_mod(scale, two_a1_inv, p32);
        // 2·a1^t·a_{n,t} = a_{n+t} - a_{t,0}·a_n - Σ_{j<t} 2·a_{t,j}·a_{n,j}
        // and 2·a1^t = 2·(2a1)^t / 2^t, so solve with scale·2^(t-1).
        let mut acc = unit_vec(t, i + 1);
        let a_t0 = residue_big(rows.central(), p32);
        sub_scaled(&mut acc, &vecs[0], a_t0, p32);
        for (j, v) in vecs.iter().enumerate().skip(1) {
            let w = mul_mod(2, residue_big(&rows.side(j as i64), p32), p32);
            sub_scaled(&mut acc, v, w, p32);
        }
        let factor = mul_mod(scale, pow_mod(2, t as u64 - 1, p32), p32);
        vecs.push(acc.into_iter().map(|c| mul_mod(c, factor, p32)).collect());
    }
    let mut out = vecs.pop().expect("at least the identity vector");
    out.truncate(i + 1);
    Ok(out)
}

fn unit_vec(k: usize, len: usize) -> Vec<u32> {
    let mut v = vec![0; len];
    v[k] = 1;
    v
}

fn sub_scaled(acc: &mut [u32], v: &[u32], w: u32, p: u32) {
    for (a, &x) in acc.iter_mut().zip(v) {
        *a = (*a + p - mul_mod(x, w, p)) % p;
    }
}

/// Integer vectors `W_i` with `2·a_{n,i} = Σ_k W_i[k]·a_{n+k}`, valid when `a1 = 1`.
pub fn side_coeff_combo_integral(tri: Trinomial, i: usize) -> Result<Vec<BigInt>> {
    require_symmetric(tri)?;
    if tri.a1 != 1 {
        return Err(Error::UnsupportedShape(format!(
            "integral reduction needs a1 = 1, got P = {tri}"
        )));
    }
    let mut vecs: Vec<Vec<BigInt>> = vec![{
        let mut v = vec![BigInt::zero(); i + 1];
        v[0] = BigInt::from(2);
        v
    }];
    let mut rows = TriangleRows::new(tri);
    for t in 1..=i {
        rows.advance();
        let mut acc = vec![BigInt::zero(); i + 1];
        acc[t] = BigInt::one();
        acc[0] -= rows.central();
        for (j, v) in vecs.iter().enumerate().skip(1) {
            let a_tj = rows.side(j as i64);
            for (a, x) in acc.iter_mut().zip(v) {
                *a -= &a_tj * x;
            }
        }
        vecs.push(acc);
    }
    Ok(vecs.pop().expect("at least W_0"))
}

/// Coefficients of `Q` folded onto `|j|`, valid because `a_{n,j} = a_{n,-j}`
/// for symmetric `P`.
fn symmetrized(q: &LaurentPoly) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); q.span() as usize + 1];
    for (e, c) in q.terms() {
        out[e.unsigned_abs() as usize] += c;
    }
    out
}

/// Reduces `ct[P^n Q]` mod an odd prime `p` to a combination of `a_{n+i}`.
pub fn reduce_q(tri: Trinomial, q: &LaurentPoly, p: u64) -> Result<ReductionResult> {
    let p32 = check_prime(p)?;
    if p32 == 2 {
        return Err(Error::OutOfScope(
            "the reduction needs p > 2 (2 must be a unit)".into(),
        ));
    }
    require_symmetric(tri)?;
    if residue_i64(tri.a1, p32) == 0 {
        return Ok(ReductionResult::Periodic {
            p: p32,
            alpha0: residue_i64(tri.a0, p32),
            ct_q: residue_big(&q.ct(), p32),
        });
    }
    let folded = symmetrized(q);
    let h = folded.len() - 1;
    if tri.a1 == 1 {
        let mut total = vec![BigInt::zero(); h + 1];
        for (j, c) in folded.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = side_coeff_combo_integral(tri, j)?;
            for (t, x) in total.iter_mut().zip(&w) {
                *t += c * x;
            }
        }
        let combo = ComboSpec::new(tri, total, 2)?.normalized();
        return Ok(ReductionResult::Combo(combo));
    }
    let mut total = vec![0u32; h + 1];
    for (j, c) in folded.iter().enumerate() {
        let c = residue_big(c, p32);
        if c == 0 {
            continue;
        }
        let v = side_coeff_combo(tri, j, p)?;
        for (t, x) in total.iter_mut().zip(&v) {
            *t = (*t + mul_mod(c, *x, p32)) % p32;
        }
    }
    let coeffs = total.into_iter().map(BigInt::from).collect();
    Ok(ReductionResult::Combo(ComboSpec::with_modulus(tri, coeffs, 1, p32)?))
}

/// `(P, Q)` for the dimension-`d` multiplicities: `P = m2·x^-1 + m1 + m2·x`,
/// `Q = x^(d-1) - x^(d-3)`.
pub fn family_spec(d: u32, m1: u32, m2: u32) -> Result<(Trinomial, LaurentPoly)> {
    if d == 0 {
        return Err(Error::Parse("family dimension d must be at least 1".into()));
    }
    let tri = Trinomial::new(m2 as i64, m1 as i64, m2 as i64)?;
    let d = d as i64;
    let q = LaurentPoly::from_terms([(d - 1, 1), (d - 3, -1)]);
    Ok((tri, q))
}

/// Exact `ct[P^n Q]` for `n < count`, straight from the triangle rows.
pub fn ct_oracle_prefix(tri: Trinomial, q: &LaurentPoly, count: usize) -> Vec<BigInt> {
    let mut rows = TriangleRows::new(tri);
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        if n > 0 {
            rows.advance();
        }
        out.push(q.terms().map(|(e, c)| c * rows.side(e)).sum());
    }
    out
}

/// Serializable view of a reduction outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum ReductionRecord {
    Combo {
        trinomial: String,
        coefficients: Vec<String>,
        divisor: u64,
        residues_mod: Option<u32>,
        text: String,
    },
    Periodic {
        p: u32,
        alpha0: u32,
        ct_q: u32,
    },
}

impl From<&ReductionResult> for ReductionRecord {
    fn from(r: &ReductionResult) -> Self {
        match r {
            ReductionResult::Combo(c) => ReductionRecord::Combo {
                trinomial: c.tri.to_string(),
                coefficients: c.coeffs().iter().map(BigInt::to_string).collect(),
                divisor: c.divisor(),
                residues_mod: c.modulus(),
                text: c.to_string(),
            },
            &ReductionResult::Periodic { p, alpha0, ct_q } => {
                ReductionRecord::Periodic { p, alpha0, ct_q }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trinomial::a_oracle_prefix;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn side_combo_examples() {
        let t = Trinomial::central();
        for p in [3u64, 5, 7, 11] {
            let inv2 = inv_mod(2, p as u32).unwrap();
            let m1 = p as u32 - inv2;
            assert_eq!(side_coeff_combo(t, 1, p).unwrap(), vec![m1, inv2]);
            // a_{n,2} ≡ 2^-1(a_{n+2} - 2a_{n+1} - a_n)
            assert_eq!(
                side_coeff_combo(t, 2, p).unwrap(),
                vec![m1, p as u32 - 1, inv2]
            );
            assert_eq!(side_coeff_combo(t, 0, p).unwrap(), vec![1]);
        }
        // spot checks at n = 2: a_{2,1} = 2 = (7-3)/2, a_{2,2} = 1 = (19-14-3)/2
        let a = a_oracle_prefix(t, 6);
        assert_eq!((&a[3] - &a[2]) / 2, BigInt::from(2));
        assert_eq!((&a[4] - 2 * &a[3] - &a[2]) / 2, BigInt::from(1));
    }

    #[test]
    fn side_combo_errors() {
        let asym = Trinomial::new(1, 1, 2).unwrap();
        assert!(matches!(side_coeff_combo(asym, 1, 5), Err(Error::UnsupportedShape(_))));
        let t = Trinomial::new(5, 1, 5).unwrap();
        assert!(matches!(side_coeff_combo(t, 1, 5), Err(Error::DegenerateSide { .. })));
        assert!(matches!(
            side_coeff_combo(Trinomial::central(), 1, 2),
            Err(Error::DegenerateSide { .. })
        ));
    }

    #[test]
    fn side_combo_against_triangle() {
        for t in [
            Trinomial::new(2, 1, 2).unwrap(),
            Trinomial::new(3, -4, 3).unwrap(),
            Trinomial::new(1, 3, 1).unwrap(),
        ] {
            for p in [3u64, 5, 7, 13] {
                if t.a1 % p as i64 == 0 {
                    continue;
                }
                let a = a_oracle_prefix(t, 60);
                let mut rows = TriangleRows::new(t);
                for n in 0..50 {
                    for i in 0..=5 {
                        let v = side_coeff_combo(t, i, p).unwrap();
                        let lhs = residue_big(&rows.side(i as i64), p as u32);
                        let rhs = v.iter().enumerate().fold(0u32, |acc, (k, &c)| {
                            (acc + mul_mod(c, residue_big(&a[n + k], p as u32), p as u32)) % p as u32
                        });
                        assert_eq!(lhs, rhs, "P={t} p={p} n={n} i={i}");
                    }
                    rows.advance();
                }
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let t = Trinomial::central();
        let motz = reduce_q(t, &q("0:1,2:-1"), 7).unwrap();
        let c = motz.combo().unwrap();
        assert_eq!((c.coeffs().to_vec(), c.divisor()), (big(&[3, 2, -1]), 2));
        assert_eq!(c.modulus(), None);

        let one = reduce_q(t, &LaurentPoly::one(), 5).unwrap();
        let c = one.combo().unwrap();
        assert_eq!((c.coeffs().to_vec(), c.divisor()), (big(&[1]), 1));

        let riordan = reduce_q(t, &q("0:1,1:-1"), 5).unwrap();
        let c = riordan.combo().unwrap();
        assert_eq!((c.coeffs().to_vec(), c.divisor()), (big(&[3, -1]), 2));
        let r = c.exact_terms(0, 8).unwrap();
        assert_eq!(r, big(&[1, 0, 1, 1, 3, 6, 15, 36]));

        let catalan = reduce_q(Trinomial::new(1, 2, 1).unwrap(), &q("0:1,1:-1"), 3).unwrap();
        let c = catalan.combo().unwrap();
        assert_eq!((c.coeffs().to_vec(), c.divisor()), (big(&[4, -1]), 2));
    }

    #[test]
    fn reduce_errors_and_periodic() {
        let t = Trinomial::central();
        assert!(matches!(reduce_q(t, &LaurentPoly::one(), 2), Err(Error::OutOfScope(_))));
        let asym = Trinomial::new(1, 1, 2).unwrap();
        assert!(matches!(
            reduce_q(asym, &LaurentPoly::one(), 5),
            Err(Error::UnsupportedShape(_))
        ));
        let deg = Trinomial::new(5, 1, 5).unwrap();
        let r = reduce_q(deg, &q("0:3,1:1"), 5).unwrap();
        assert_eq!(r, ReductionResult::Periodic { p: 5, alpha0: 1, ct_q: 3 });
        let b = ct_oracle_prefix(deg, &q("0:3,1:1"), 200);
        for (n, v) in b.iter().enumerate() {
            assert_eq!(residue_big(v, 5), periodic_term(1, 3, 5, n as u64));
        }
    }

    #[test]
    fn family_examples() {
        let (t, qq) = family_spec(1, 1, 1).unwrap();
        assert_eq!(t, Trinomial::central());
        assert_eq!(qq, q("0:1,-2:-1"));

        let (t, qq) = family_spec(1, 2, 1).unwrap();
        let b = ct_oracle_prefix(t, &qq, 6);
        // 1 - x^-2 over (x^-1+2+x) gives the Catalan numbers shifted by one
        assert_eq!(b, big(&[1, 2, 5, 14, 42, 132]));

        let (t, qq) = family_spec(2, 1, 1).unwrap();
        assert_eq!(qq, q("1:1,-1:-1"));
        assert!(ct_oracle_prefix(t, &qq, 30).iter().all(Zero::is_zero));

        assert!(family_spec(0, 1, 1).is_err());
        assert!(family_spec(1, 0, 0).is_err());
    }

    #[test]
    fn residue_reduction_is_sound() {
        let t = Trinomial::new(2, 3, 2).unwrap();
        let qq = q("-2:1,0:4,3:-5");
        for p in [3u64, 5, 7, 11, 13] {
            let r = reduce_q(t, &qq, p).unwrap();
            let b = ct_oracle_prefix(t, &qq, 300);
            match r {
                ReductionResult::Combo(c) => {
                    assert_eq!(c.modulus(), Some(p as u32));
                    assert!(c.span() <= 3);
                    let ev = c.evaluator(p).unwrap();
                    let pre = ev.prefix(300);
                    for n in 0..300 {
                        assert_eq!(pre[n], residue_big(&b[n], p as u32), "p={p} n={n}");
                    }
                }
                ReductionResult::Periodic { .. } => unreachable!("a1 = 2 is a unit for odd p"),
            }
        }
    }
}
