//! Named sequences and their vendored reference terms.

use std::fmt;

use num_bigint::BigInt;

use crate::combo::ComboSpec;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Trinomial};
use crate::recurrence::{self, is_motzkin, is_motzkin_combo, Classification, Mod2Witnesser, Verdict};
use crate::reduce::{ct_oracle_prefix, family_spec, periodic_term, reduce_q, ReductionResult};
use crate::trinomial::a_oracle_prefix;

/// How a sequence is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// `ct[P^n Q]`.
    PQ { tri: Trinomial, q: LaurentPoly },
    /// `ct[P^n]`.
    Bare(Trinomial),
    Family { d: u32, m1: u32, m2: u32 },
    Combo(ComboSpec),
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::PQ { tri, q } => write!(f, "P={tri};Q={q}"),
            Construction::Bare(tri) => write!(f, "P={tri}"),
            Construction::Family { d, m1, m2 } => write!(f, "family={d},{m1},{m2}"),
            Construction::Combo(c) => write!(f, "{c}"),
        }
    }
}

impl Construction {
    pub fn tri(&self) -> Result<Trinomial> {
        Ok(match self {
            Construction::PQ { tri, .. } | Construction::Bare(tri) => *tri,
            Construction::Family { d, m1, m2 } => family_spec(*d, *m1, *m2)?.0,
            Construction::Combo(c) => c.tri,
        })
    }

    /// `(P, Q)` when the construction has that shape (`Q = 1` for a bare trinomial).
    pub fn pq(&self) -> Result<Option<(Trinomial, LaurentPoly)>> {
        Ok(match self {
            Construction::PQ { tri, q } => Some((*tri, q.clone())),
            Construction::Bare(tri) => Some((*tri, LaurentPoly::one())),
            Construction::Family { d, m1, m2 } => Some(family_spec(*d, *m1, *m2)?),
            Construction::Combo(_) => None,
        })
    }

    pub fn is_motzkin(&self) -> bool {
        match self {
            Construction::Combo(c) => is_motzkin_combo(c),
            other => matches!(other.pq(), Ok(Some((tri, q))) if is_motzkin(tri, &q)),
        }
    }

    pub fn exact_terms(&self, from: usize, count: usize) -> Result<Vec<BigInt>> {
        if let Construction::Combo(c) = self {
            return c.exact_terms(from, count);
        }
        let (tri, q) = self.pq()?.expect("non-combo constructions have (P, Q)");
        let all = if q == LaurentPoly::one() {
            a_oracle_prefix(tri, from + count)
        } else {
            ct_oracle_prefix(tri, &q, from + count)
        };
        Ok(all.into_iter().skip(from).collect())
    }

    pub fn reduce(&self, p: u64) -> Result<ReductionResult> {
        match self {
            Construction::Bare(tri) => Ok(ReductionResult::Combo(ComboSpec::single(*tri))),
            Construction::Combo(c) => {
                let p32 = crate::modular::check_prime(p)?;
                c.check_modulus(p32)?;
                Ok(ReductionResult::Combo(c.clone()))
            }
            _ => {
                let (tri, q) = self.pq()?.expect("(P, Q) shape");
                reduce_q(tri, &q, p)
            }
        }
    }

    pub fn classify(&self, p: u64) -> Result<Classification> {
        if p == 2 && self.is_motzkin() {
            return Ok(recurrence::classify_motzkin_mod2());
        }
        match self.reduce(p)? {
            ReductionResult::Combo(c) => recurrence::classify(&c, p),
            ReductionResult::Periodic { p, alpha0, ct_q } => {
                Ok(recurrence::classify_periodic(p, alpha0, ct_q))
            }
        }
    }

    /// `b_n mod p` for `n` in `[from, from + count)`.
    pub fn mod_terms(&self, p: u64, from: u64, count: usize) -> Result<Vec<u32>> {
        if p == 2 && self.is_motzkin() {
            let w = Mod2Witnesser::new();
            let start = crate::digits::BasePDigits::from_u64(from, 2)?;
            return w
                .witness_extended(&start, count.max(1))
                .map(|wit| wit.word.into_iter().take(count).collect());
        }
        match self.reduce(p)? {
            ReductionResult::Combo(c) => Ok(c.evaluator(p)?.range_u64(from, count)),
            ReductionResult::Periodic { p, alpha0, ct_q } => Ok((from..from + count as u64)
                .map(|n| periodic_term(alpha0, ct_q, p, n))
                .collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedSequence {
    pub name: String,
    pub oeis: String,
    pub construction: Construction,
    pub reference: Vec<BigInt>,
}

const FIXTURES: [&str; 5] = [
    include_str!("../fixtures/motzkin.txt"),
    include_str!("../fixtures/riordan.txt"),
    include_str!("../fixtures/catalan.txt"),
    include_str!("../fixtures/central_trinomial.txt"),
    include_str!("../fixtures/central_binomial.txt"),
];

const A113305: &str = include_str!("../fixtures/a113305.txt");

struct Fixture {
    name: String,
    oeis: String,
    construction: String,
    terms: Vec<BigInt>,
}

fn parse_fixture(text: &str) -> Result<Fixture> {
    let mut fields = std::collections::HashMap::new();
    let mut terms = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some((key, value)) = line.split_once('=') {
            fields.insert(key.to_string(), value.to_string());
        } else {
            let t = line
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("fixture term {line:?}")))?;
            terms.push(t);
        }
    }
    let mut take = |k: &str| {
        fields
            .remove(k)
            .ok_or_else(|| Error::Parse(format!("fixture missing {k}=")))
    };
    Ok(Fixture {
        name: take("name")?,
        oeis: take("oeis")?,
        construction: take("construction")?,
        terms,
    })
}

/// Parses `P=a,b,c` optionally followed by `;Q=e:c,...`.
pub fn parse_construction(text: &str) -> Result<Construction> {
    let mut tri = None;
    let mut q = None;
    for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        match part.split_once('=') {
            Some(("P", v)) => tri = Some(v.parse::<Trinomial>()?),
            Some(("Q", v)) => q = Some(v.parse::<LaurentPoly>()?),
            _ => return Err(Error::Parse(format!("construction part {part:?}"))),
        }
    }
    let tri = tri.ok_or_else(|| Error::Parse(format!("construction {text:?} lacks P=")))?;
    Ok(match q {
        Some(q) => Construction::PQ { tri, q },
        None => Construction::Bare(tri),
    })
}

/// Registered names.
pub fn names() -> Vec<&'static str> {
    vec!["motzkin", "riordan", "catalan", "central-trinomial", "central-binomial"]
}

pub fn lookup(name: &str) -> Result<NamedSequence> {
    for text in FIXTURES {
        let fx = parse_fixture(text)?;
        if fx.name == name {
            return Ok(NamedSequence {
                construction: parse_construction(&fx.construction)?,
                name: fx.name,
                oeis: fx.oeis,
                reference: fx.terms,
            });
        }
    }
    Err(Error::UnknownSequence(name.to_string()))
}

/// Vendored A113305 terms below 200.
pub fn a113305_fixture() -> Vec<u64> {
    parse_fixture(A113305)
        .expect("bundled fixture parses")
        .terms
        .iter()
        .map(|t| u64::try_from(t).expect("small prime"))
        .collect()
}

/// The primes on which the named sequence is uniformly recurrent.
pub fn recurrent_primes(name: &str, primes: &[u64]) -> Result<Vec<u64>> {
    let seq = lookup(name)?;
    let mut out = Vec::new();
    for &p in primes {
        if seq.construction.classify(p)?.verdict == Verdict::UniformlyRecurrent {
            out.push(p);
        }
    }
    Ok(out)
}
