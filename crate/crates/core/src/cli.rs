//! Command-line surface. Every command builds one record, wraps it with the
//! tool version and an echo of its inputs, and renders it as JSON, CSV or
//! plain text.

use std::collections::BTreeMap;
use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::catalog::{self, Construction};
use crate::combo::ComboSpec;
use crate::digits::BasePDigits;
use crate::error::{Error, Result};
use crate::laurent::{ConstantTermMod, LaurentPoly, Trinomial};
use crate::modular::{check_prime, residue_big};
use crate::recurrence::{
    self, density_lower_bound, min_recurrence_oracle, witness_word, Classification, Mod2Witnesser,
    WitnessRecord,
};
use crate::reduce::{ReductionRecord, ReductionResult};

/// `(from + count)^2` cap for the exact engine.
pub const ORACLE_BUDGET: u128 = 25_000_000;
/// Largest `horizon` the brute-force recurrence scan accepts.
pub const HORIZON_LIMIT: u64 = 1_000_000_000;
/// Independent re-checks run only below this many digit evaluations.
pub const VERIFY_BUDGET: usize = 4_000_000;

#[derive(Parser, Debug)]
#[command(name = "ctseq", version, about = "Constant-term sequences modulo primes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Oracle,
    Fast,
}

/// Exactly one of `--seq`, `--P` (with optional `--Q`), `--combo`, `--family`.
#[derive(Args, Debug, Clone)]
pub struct Selector {
    /// Catalog name (motzkin, riordan, catalan, central-trinomial, central-binomial).
    #[arg(long)]
    pub seq: Option<String>,
    /// Trinomial coefficients `a-1,a0,a1`.
    #[arg(long = "P")]
    pub p_poly: Option<String>,
    /// Laurent polynomial `e:c,e:c,...` (requires --P).
    #[arg(long = "Q")]
    pub q_poly: Option<String>,
    /// Combination `P=a,b,c; c=c0,c1,...; d=N`.
    #[arg(long)]
    pub combo: Option<String>,
    /// Family triple `d,m1,m2`.
    #[arg(long)]
    pub family: Option<String>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Verify {
    /// Re-check certificates through the independent evaluator (default).
    #[arg(long, overrides_with = "no_verify")]
    pub verify: bool,
    /// Skip the independent re-check.
    #[arg(long = "no-verify", overrides_with = "verify")]
    pub no_verify: bool,
}

impl Verify {
    fn enabled(self) -> bool {
        !self.no_verify || self.verify
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Terms b_from … b_{from+count-1}, exactly or mod p.
    Terms {
        #[command(flatten)]
        sel: Selector,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 0)]
        from: u64,
        #[arg(long, default_value_t = 20)]
        count: u64,
        /// Defaults to fast when --p is given, oracle otherwise.
        #[arg(long, value_enum)]
        engine: Option<Engine>,
    },
    /// Uniform recurrence or zero density one.
    Classify {
        #[command(flatten)]
        sel: Selector,
        #[arg(long)]
        p: u64,
    },
    /// Rewrite ct[P^n Q] as a combination of central coefficients.
    Reduce {
        #[command(flatten)]
        sel: Selector,
        #[arg(long)]
        p: u64,
    },
    /// Shift certificate for the word starting at --start (a base-p numeral).
    Witness {
        #[command(flatten)]
        sel: Selector,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value = "0")]
        start: String,
        #[arg(long, default_value_t = 1)]
        len: usize,
        #[command(flatten)]
        verify: Verify,
    },
    /// A run of p^(k-1) consecutive zeros mod p.
    ZeroRun {
        #[command(flatten)]
        sel: Selector,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        verify: Verify,
    },
    /// Measured zero fraction over [0, p^k) against the analytic bound.
    Density {
        #[command(flatten)]
        sel: Selector,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
    },
    /// Least shift reproducing a word, by direct scan.
    MinRecurrence {
        #[command(flatten)]
        sel: Selector,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value = "0")]
        start: String,
        #[arg(long, default_value_t = 1)]
        len: usize,
        #[arg(long, default_value_t = 1_000_000)]
        horizon: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectorEcho {
    pub kind: String,
    pub text: String,
    pub construction: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub selector: SelectorEcho,
    pub p: Option<u64>,
    pub params: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub version: String,
    pub command: String,
    pub input: InputEcho,
    pub result: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRow {
    pub n: u64,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermsRecord {
    pub engine: Engine,
    pub modulus: Option<u64>,
    pub rows: Vec<TermRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    /// `independent`, `fast` or `skipped`.
    pub method: String,
    pub checked_terms: u64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOutput {
    #[serde(flatten)]
    pub witness: WitnessRecord,
    /// `start + shift`.
    pub target: String,
    pub verification: Verification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroRunRecord {
    pub p: u32,
    pub z: u32,
    pub k: u32,
    pub start: String,
    pub start_decimal: String,
    pub length: String,
    pub verification: Verification,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityRecord {
    pub p: u32,
    pub k: u32,
    pub zeros: u64,
    pub total: u64,
    pub fraction: String,
    pub lower_bound: Option<String>,
    pub fraction_approx: f64,
    pub lower_bound_approx: Option<f64>,
    pub meets_bound: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinRecurrenceRecord {
    pub p: u32,
    pub start: String,
    pub length: usize,
    pub horizon: u64,
    pub shift: Option<String>,
    pub shift_decimal: Option<u64>,
}

/// Resolves the selector into a construction plus its echo.
pub fn resolve(sel: &Selector) -> Result<(Construction, SelectorEcho)> {
    let given = [
        sel.seq.is_some(),
        sel.p_poly.is_some(),
        sel.combo.is_some(),
        sel.family.is_some(),
    ];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(Error::Parse(
            "give exactly one of --seq, --P, --combo, --family".into(),
        ));
    }
    if sel.q_poly.is_some() && sel.p_poly.is_none() {
        return Err(Error::Parse("--Q needs --P".into()));
    }
    let (kind, text, construction) = if let Some(name) = &sel.seq {
        ("seq", name.clone(), catalog::lookup(name)?.construction)
    } else if let Some(p) = &sel.p_poly {
        let tri: Trinomial = p.parse()?;
        match &sel.q_poly {
            Some(q) => {
                let q: LaurentPoly = q.parse()?;
                ("pq", format!("P={p};Q={q}"), Construction::PQ { tri, q })
            }
            None => ("pq", format!("P={p}"), Construction::Bare(tri)),
        }
    } else if let Some(c) = &sel.combo {
        ("combo", c.clone(), Construction::Combo(c.parse::<ComboSpec>()?))
    } else {
        let text = sel.family.clone().expect("one selector present");
        let parts: Vec<u32> = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("family component {s:?}")))
            })
            .collect::<Result<_>>()?;
        let [d, m1, m2] = parts[..] else {
            return Err(Error::Parse(format!("family needs d,m1,m2, got {text:?}")));
        };
        crate::reduce::family_spec(d, m1, m2)?;
        ("family", text, Construction::Family { d, m1, m2 })
    };
    let echo = SelectorEcho {
        kind: kind.to_string(),
        text,
        construction: construction.to_string(),
    };
    Ok((construction, echo))
}

/// `ct[P^n Q'] mod p` without the digit table.
fn independent_evaluator(c: &Construction, p: u32) -> Result<ConstantTermMod> {
    let tri = c.tri()?;
    let q = match c {
        Construction::Combo(spec) => spec.as_q_mod(p)?,
        other => other.pq()?.expect("(P, Q) shape").1,
    };
    Ok(ConstantTermMod::new(&tri.to_poly(), &q, p))
}

fn independent_word(ev: &ConstantTermMod, start: &BasePDigits, len: usize) -> Vec<u32> {
    let mut idx = start.clone();
    (0..len)
        .map(|t| {
            if t > 0 {
                idx = idx.add_u64(1);
            }
            ev.eval(&idx)
        })
        .collect()
}

fn big_to_string(v: &num_rational::BigRational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

fn rational_f64(v: &num_rational::BigRational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn envelope<T: Serialize>(command: &str, input: InputEcho, result: T) -> Envelope<T> {
    Envelope {
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.to_string(),
        input,
        result,
    }
}

/// Rendered output of one command.
pub struct Rendered {
    pub json: Value,
    /// Header and rows for CSV.
    pub table: (Vec<String>, Vec<Vec<String>>),
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn object_table(v: &Value) -> (Vec<String>, Vec<Vec<String>>) {
    match v {
        Value::Object(map) => {
            let header: Vec<String> = map.keys().cloned().collect();
            let row = map.values().map(scalar_text).collect();
            (header, vec![row])
        }
        other => (vec!["value".into()], vec![vec![scalar_text(other)]]),
    }
}

fn render<T: Serialize>(env: &Envelope<T>, table: Option<(Vec<String>, Vec<Vec<String>>)>) -> Result<Rendered> {
    let json = serde_json::to_value(env).map_err(|e| Error::ConstructionBug(e.to_string()))?;
    let table = table.unwrap_or_else(|| object_table(&json["result"]));
    Ok(Rendered { json, table })
}

fn format_output(r: &Rendered, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&r.json)
                .map_err(|e| Error::ConstructionBug(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::ConstructionBug(e.to_string());
            w.write_record(&r.table.0).map_err(io)?;
            for row in &r.table.1 {
                w.write_record(row).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::ConstructionBug(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::ConstructionBug(e.to_string()))
        }
        Format::Plain => {
            let (header, rows) = &r.table;
            let mut out = String::new();
            if rows.len() == 1 {
                for (k, v) in header.iter().zip(&rows[0]) {
                    out.push_str(&format!("{k}: {v}\n"));
                }
            } else {
                for row in rows {
                    out.push_str(&row.join(" "));
                    out.push('\n');
                }
            }
            Ok(out)
        }
    }
}

fn cmd_terms(
    sel: &Selector,
    p: Option<u64>,
    from: u64,
    count: u64,
    engine: Option<Engine>,
) -> Result<Rendered> {
    let (c, echo) = resolve(sel)?;
    let engine = engine.unwrap_or(if p.is_some() { Engine::Fast } else { Engine::Oracle });
    let p32 = p.map(check_prime).transpose()?;
    let rows: Vec<TermRow> = match engine {
        Engine::Fast => {
            let p = p.ok_or_else(|| Error::Parse("the fast engine needs --p".into()))?;
            let count = usize::try_from(count)
                .ok()
                .filter(|&c| c as u64 <= HORIZON_LIMIT)
                .ok_or_else(|| Error::BudgetExceeded(format!("count {count}")))?;
            from.checked_add(count as u64)
                .ok_or_else(|| Error::BudgetExceeded("index range exceeds 64 bits".into()))?;
            c.mod_terms(p, from, count)?
                .into_iter()
                .enumerate()
                .map(|(t, v)| TermRow { n: from + t as u64, value: v.to_string() })
                .collect()
        }
        Engine::Oracle => {
            let end = from as u128 + count as u128;
            if end * end > ORACLE_BUDGET {
                return Err(Error::BudgetExceeded(format!(
                    "exact terms up to index {end} exceed the oracle budget"
                )));
            }
            c.exact_terms(from as usize, count as usize)?
                .into_iter()
                .enumerate()
                .map(|(t, v)| TermRow {
                    n: from + t as u64,
                    value: match p32 {
                        Some(p) => residue_big(&v, p).to_string(),
                        None => v.to_string(),
                    },
                })
                .collect()
        }
    };
    let table = (
        vec!["n".to_string(), "value".to_string()],
        rows.iter().map(|r| vec![r.n.to_string(), r.value.clone()]).collect(),
    );
    let input = InputEcho {
        selector: echo,
        p,
        params: params(&[
            ("from", from.to_string()),
            ("count", count.to_string()),
            ("engine", format!("{engine:?}").to_lowercase()),
        ]),
    };
    let rec = TermsRecord { engine, modulus: p, rows };
    render(&envelope("terms", input, rec), Some(table))
}

fn cmd_classify(sel: &Selector, p: u64) -> Result<Rendered> {
    let (c, echo) = resolve(sel)?;
    let rec: Classification = c.classify(p)?;
    let input = InputEcho { selector: echo, p: Some(p), params: BTreeMap::new() };
    render(&envelope("classify", input, rec), None)
}

fn cmd_reduce(sel: &Selector, p: u64) -> Result<Rendered> {
    let (c, echo) = resolve(sel)?;
    let result = c.reduce(p)?;
    let rec = ReductionRecord::from(&result);
    let input = InputEcho { selector: echo, p: Some(p), params: BTreeMap::new() };
    render(&envelope("reduce", input, rec), None)
}

fn cmd_witness(sel: &Selector, p: u64, start: &str, len: usize, verify: bool) -> Result<Rendered> {
    let (c, echo) = resolve(sel)?;
    let p32 = check_prime(p)?;
    let start_n = BasePDigits::parse(start, p)?;
    let witness = if p32 == 2 && c.is_motzkin() {
        Mod2Witnesser::new().witness_extended(&start_n, len)?
    } else {
        match c.reduce(p)? {
            ReductionResult::Combo(spec) => {
                if len == 1 && matches!(c, Construction::Bare(_)) {
                    let single = recurrence::witness_single(spec.tri, &start_n)?;
                    let shift = BasePDigits::from_biguint(
                        &(single.n_prime.to_biguint() - single.n.to_biguint()),
                        p,
                    )?;
                    let ev = spec.evaluator(p)?;
                    recurrence::WordWitness {
                        p: p32,
                        start: start_n.clone(),
                        length: 1,
                        shift,
                        strategy: recurrence::Strategy::PrefixIncrement,
                        internals: recurrence::WitnessInternals {
                            prefix_cutoff: Some(0),
                            prefix_case: Some(single.case),
                            ..Default::default()
                        },
                        word: ev.word(&start_n, 1),
                    }
                } else {
                    witness_word(&spec, p, &start_n, len)?
                }
            }
            ReductionResult::Periodic { .. } => {
                return Err(Error::Inapplicable(format!(
                    "p = {p} divides a1: b_n ≡ a0^n·ct[Q] repeats with period dividing p-1"
                )))
            }
        }
    };
    let target = start_n.add(&witness.shift)?;
    let verification = if !verify {
        Verification { method: "skipped".into(), checked_terms: 0, ok: true }
    } else {
        let cost = 2 * len * (target.len() + 1) * p32 as usize;
        if cost <= VERIFY_BUDGET {
            let ev = independent_evaluator(&c, p32)?;
            let a = independent_word(&ev, &start_n, len);
            let b = independent_word(&ev, &target, len);
            Verification {
                method: "independent".into(),
                checked_terms: 2 * len as u64,
                ok: a == b && a == witness.word,
            }
        } else {
            Verification { method: "fast".into(), checked_terms: 2 * len as u64, ok: true }
        }
    };
    if !verification.ok {
        return Err(Error::ConstructionBug(format!(
            "independent check rejects shift {} at {start_n}",
            witness.shift
        )));
    }
    let rec = WitnessOutput {
        witness: witness.to_record(),
        target: target.to_string(),
        verification,
    };
    let input = InputEcho {
        selector: echo,
        p: Some(p),
        params: params(&[("start", start.to_string()), ("len", len.to_string())]),
    };
    render(&envelope("witness", input, rec), None)
}

fn combo_for(c: &Construction, p: u64) -> Result<ComboSpec> {
    match c.reduce(p)? {
        ReductionResult::Combo(spec) => Ok(spec),
        ReductionResult::Periodic { .. } => Err(Error::Inapplicable(format!(
            "p = {p} divides a1: the sequence is periodic mod p"
        ))),
    }
}

fn cmd_zero_run(sel: &Selector, p: u64, k: u32, verify: bool) -> Result<Rendered> {
    let (c, echo) = resolve(sel)?;
    let p32 = check_prime(p)?;
    let run = recurrence::zero_run(&combo_for(&c, p)?, p, k)?;
    let verification = if verify {
        let check = run.length.to_u64().map_or(256, |l| l.min(256)) as usize;
        let ev = independent_evaluator(&c, p32)?;
        let word = independent_word(&ev, &run.start, check);
        Verification {
            method: "independent".into(),
            checked_terms: check as u64,
            ok: word.iter().all(|&v| v == 0),
        }
    } else {
        Verification { method: "fast".into(), checked_terms: run.verified_terms, ok: true }
    };
    if !verification.ok {
        return Err(Error::ConstructionBug(format!("independent check rejects the run at {}", run.start)));
    }
    let rec = ZeroRunRecord {
        p: run.p,
        z: run.z,
        k: run.k,
        start: run.start.to_string(),
        start_decimal: run.start.to_biguint().to_string(),
        length: run.length.to_string(),
        verification,
    };
    let input = InputEcho { selector: echo, p: Some(p), params: params(&[("k", k.to_string())]) };
    render(&envelope("zero-run", input, rec), None)
}

fn cmd_density(sel: &Selector, p: u64, k: u32) -> Result<Rendered> {
    let (c, echo) = resolve(sel)?;
    let spec = combo_for(&c, p)?;
    let p32 = check_prime(p)?;
    let report = recurrence::density_measure(&spec, p, k)?;
    let has_zero = spec.evaluator(p)?.table().has_zero();
    let bound = if has_zero {
        Some(density_lower_bound(p, spec.span() as u64, k)?)
    } else {
        None
    };
    let rec = DensityRecord {
        p: p32,
        k,
        zeros: report.zeros,
        total: report.total,
        fraction: big_to_string(&report.fraction),
        lower_bound: bound.as_ref().map(big_to_string),
        fraction_approx: rational_f64(&report.fraction),
        lower_bound_approx: bound.as_ref().map(rational_f64),
        meets_bound: bound.as_ref().map(|b| report.fraction >= *b),
    };
    let input = InputEcho { selector: echo, p: Some(p), params: params(&[("k", k.to_string())]) };
    render(&envelope("density", input, rec), None)
}

fn cmd_min_recurrence(sel: &Selector, p: u64, start: &str, len: usize, horizon: u64) -> Result<Rendered> {
    let (c, echo) = resolve(sel)?;
    let p32 = check_prime(p)?;
    if horizon > HORIZON_LIMIT {
        return Err(Error::BudgetExceeded(format!("horizon {horizon} exceeds {HORIZON_LIMIT}")));
    }
    let start_n = BasePDigits::parse(start, p)?;
    let start_u = start_n
        .to_u64()
        .ok_or_else(|| Error::BudgetExceeded("start index exceeds 64 bits".into()))?;
    let delta = if p32 == 2 && c.is_motzkin() {
        let ev = ConstantTermMod::new(
            &Trinomial::central().to_poly(),
            &LaurentPoly::from_terms([(0, 1), (2, -1)]),
            2,
        );
        let word: Vec<u32> = (0..len as u64).map(|t| ev.eval_u64(start_u + t)).collect();
        (1..=horizon).find(|&d| (0..len as u64).all(|t| ev.eval_u64(start_u + d + t) == word[t as usize]))
    } else {
        min_recurrence_oracle(&combo_for(&c, p)?, p, start_u, len, horizon)?
    };
    let rec = MinRecurrenceRecord {
        p: p32,
        start: start_n.to_string(),
        length: len,
        horizon,
        shift: delta.map(|d| BasePDigits::from_u64(d, p).map(|b| b.to_string())).transpose()?,
        shift_decimal: delta,
    };
    let input = InputEcho {
        selector: echo,
        p: Some(p),
        params: params(&[
            ("start", start.to_string()),
            ("len", len.to_string()),
            ("horizon", horizon.to_string()),
        ]),
    };
    render(&envelope("min-recurrence", input, rec), None)
}

/// Runs a parsed command and returns the formatted output.
pub fn execute(cli: &Cli) -> Result<String> {
    let rendered = match &cli.command {
        Command::Terms { sel, p, from, count, engine } => cmd_terms(sel, *p, *from, *count, *engine)?,
        Command::Classify { sel, p } => cmd_classify(sel, *p)?,
        Command::Reduce { sel, p } => cmd_reduce(sel, *p)?,
        Command::Witness { sel, p, start, len, verify } => {
            cmd_witness(sel, *p, start, *len, verify.enabled())?
        }
        Command::ZeroRun { sel, p, k, verify } => cmd_zero_run(sel, *p, *k, verify.enabled())?,
        Command::Density { sel, p, k } => cmd_density(sel, *p, *k)?,
        Command::MinRecurrence { sel, p, start, len, horizon } => {
            cmd_min_recurrence(sel, *p, start, *len, *horizon)?
        }
    };
    format_output(&rendered, cli.format)
}

/// Parses arguments, runs, writes to stdout/stderr and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    use std::io::Write;
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(args: &[&str]) -> Result<Value> {
        let cli = Cli::try_parse_from(std::iter::once("ctseq").chain(args.iter().copied())).unwrap();
        let out = execute(&cli)?;
        Ok(serde_json::from_str(&out).unwrap())
    }

    #[test]
    fn terms_examples() {
        let v = exec(&["terms", "--seq", "motzkin", "--count", "7"]).unwrap();
        let vals: Vec<&str> = v["result"]["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["value"].as_str().unwrap())
            .collect();
        assert_eq!(vals, ["1", "1", "2", "4", "9", "21", "51"]);
        let v = exec(&["terms", "--seq", "central-trinomial", "--p", "5", "--from", "192", "--count", "1"]).unwrap();
        assert_eq!(v["result"]["rows"][0]["value"], "3");
        let v = exec(&["terms", "--seq", "motzkin", "--count", "0"]).unwrap();
        assert!(v["result"]["rows"].as_array().unwrap().is_empty());
    }

    #[test]
    fn selector_rules() {
        let sel = Selector { seq: None, p_poly: None, q_poly: None, combo: None, family: None };
        assert!(matches!(resolve(&sel), Err(Error::Parse(_))));
        let sel = Selector { seq: Some("motzkin".into()), p_poly: Some("1,1,1".into()), ..sel };
        assert!(matches!(resolve(&sel), Err(Error::Parse(_))));
    }

    #[test]
    fn budget_and_engine_errors() {
        assert!(matches!(
            exec(&["terms", "--seq", "motzkin", "--count", "100000"]),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(matches!(
            exec(&["terms", "--seq", "motzkin", "--engine", "fast"]),
            Err(Error::Parse(_))
        ));
    }
}
