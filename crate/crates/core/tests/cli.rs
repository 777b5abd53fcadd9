use std::process::{Command, Output};

use ctseq::cli::{
    DensityRecord, Envelope, MinRecurrenceRecord, TermsRecord, WitnessOutput, ZeroRunRecord,
};
use ctseq::recurrence::{Basis, Classification, Strategy, Verdict};
use ctseq::reduce::ReductionRecord;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn ctseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctseq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Parses a JSON record and checks that re-emitting it reproduces the text.
fn record<T: DeserializeOwned + Serialize>(args: &[&str]) -> Envelope<T> {
    let out = ctseq(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let env: Envelope<T> = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_value(&env).unwrap();
    let original: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(again, original, "round trip for {args:?}");
    assert_eq!(env.version, env!("CARGO_PKG_VERSION"));
    env
}

fn code(args: &[&str]) -> i32 {
    ctseq(args).status.code().unwrap()
}

#[test]
fn terms() {
    let env: Envelope<TermsRecord> = record(&["terms", "--seq", "motzkin", "--from", "0", "--count", "7"]);
    let values: Vec<&str> = env.result.rows.iter().map(|r| r.value.as_str()).collect();
    assert_eq!(values, ["1", "1", "2", "4", "9", "21", "51"]);
    assert_eq!(env.input.selector.text, "motzkin");
    assert_eq!(env.input.params["count"], "7");

    let env: Envelope<TermsRecord> = record(&[
        "terms", "--seq", "central-trinomial", "--p", "5", "--engine", "fast", "--from", "192", "--count", "1",
    ]);
    assert_eq!(env.result.rows[0].value, "3");

    let env: Envelope<TermsRecord> = record(&["terms", "--seq", "motzkin", "--count", "0"]);
    assert!(env.result.rows.is_empty());
}

#[test]
fn terms_agree_between_engines() {
    for seq in ["motzkin", "riordan", "catalan", "central-binomial"] {
        let args = |engine: &'static str| {
            vec!["terms", "--seq", seq, "--p", "7", "--engine", engine, "--from", "30", "--count", "40"]
        };
        let fast: Envelope<TermsRecord> = record(&args("fast"));
        let oracle: Envelope<TermsRecord> = record(&args("oracle"));
        assert_eq!(fast.result.rows, oracle.result.rows, "{seq}");
    }
}

#[test]
fn classify() {
    let env: Envelope<Classification> = record(&["classify", "--seq", "motzkin", "--p", "3"]);
    assert_eq!(env.result.verdict, Verdict::ZeroDensityOne);
    assert_eq!(env.result.zero_digit, Some(2));
    let env: Envelope<Classification> = record(&["classify", "--seq", "motzkin", "--p", "5"]);
    assert_eq!(env.result.verdict, Verdict::UniformlyRecurrent);
    assert_eq!(env.result.digit_table.len(), 5);
    let env: Envelope<Classification> = record(&["classify", "--seq", "motzkin", "--p", "2"]);
    assert_eq!(env.result.verdict, Verdict::UniformlyRecurrent);
    assert_eq!(env.result.basis, Basis::Mod2Rule);
}

#[test]
fn reduce() {
    let env: Envelope<ReductionRecord> = record(&["reduce", "--seq", "motzkin", "--p", "7"]);
    match env.result {
        ReductionRecord::Combo { coefficients, divisor, .. } => {
            assert_eq!(coefficients, ["3", "2", "-1"]);
            assert_eq!(divisor, 2);
        }
        other => panic!("{other:?}"),
    }
    let env: Envelope<ReductionRecord> = record(&["reduce", "--seq", "riordan", "--p", "5"]);
    match env.result {
        ReductionRecord::Combo { coefficients, divisor, .. } => {
            assert_eq!(coefficients, ["3", "-1"]);
            assert_eq!(divisor, 2);
        }
        other => panic!("{other:?}"),
    }
    let env: Envelope<ReductionRecord> = record(&["reduce", "--P", "5,1,5", "--Q", "0:1,1:-1", "--p", "5"]);
    assert!(matches!(env.result, ReductionRecord::Periodic { p: 5, .. }));
    // not symmetric
    assert_eq!(code(&["reduce", "--P", "1,1,5", "--Q", "0:1,1:-1", "--p", "5"]), 2);
}

#[test]
fn witness() {
    let env: Envelope<WitnessOutput> =
        record(&["witness", "--seq", "central-trinomial", "--p", "5", "--start", "123214444440", "--len", "1"]);
    assert!(env.result.verification.ok);
    assert_eq!(env.result.verification.method, "independent");
    assert!(env.result.witness.internals.prefix_case.is_some());

    let env: Envelope<WitnessOutput> =
        record(&["witness", "--seq", "motzkin", "--p", "5", "--start", "123214444443", "--len", "3"]);
    assert!(env.result.verification.ok);

    let env: Envelope<WitnessOutput> = record(&["witness", "--seq", "motzkin", "--p", "2", "--start", "11", "--len", "4"]);
    assert_eq!(env.result.witness.strategy, Strategy::Mod2Rule);
    assert!(["1000", "10000"].contains(&env.result.witness.shift.as_str()));

    let out = ctseq(&["witness", "--seq", "motzkin", "--p", "3", "--start", "12"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("zero-run"));
}

#[test]
fn witness_without_verification() {
    let env: Envelope<WitnessOutput> = record(&[
        "witness", "--seq", "motzkin", "--p", "5", "--start", "4444444444444", "--len", "10", "--no-verify",
    ]);
    assert_eq!(env.result.verification.method, "skipped");
}

#[test]
fn zero_run_and_density() {
    let env: Envelope<ZeroRunRecord> = record(&["zero-run", "--seq", "motzkin", "--p", "3", "--k", "3"]);
    assert_eq!(env.result.start_decimal, "54");
    assert_eq!(env.result.length, "9");
    assert!(env.result.verification.ok);

    let env: Envelope<DensityRecord> = record(&["density", "--seq", "motzkin", "--p", "3", "--k", "8"]);
    assert_eq!(env.result.meets_bound, Some(true));
    assert_eq!(env.result.lower_bound.as_deref(), Some("2059/2187"));

    assert_eq!(code(&["zero-run", "--seq", "motzkin", "--p", "3", "--k", "1"]), 2);
    assert_eq!(code(&["density", "--seq", "motzkin", "--p", "3", "--k", "1"]), 2);
}

#[test]
fn min_recurrence() {
    let env: Envelope<MinRecurrenceRecord> =
        record(&["min-recurrence", "--P", "0,2,0", "--p", "5", "--start", "0", "--len", "3"]);
    assert_eq!(env.result.shift_decimal, Some(4));
}

#[test]
fn selectors() {
    let family: Envelope<TermsRecord> = record(&["terms", "--family", "1,1,1", "--count", "12"]);
    let motzkin: Envelope<TermsRecord> = record(&["terms", "--seq", "motzkin", "--count", "12"]);
    assert_eq!(family.result.rows, motzkin.result.rows);
    let combo: Envelope<TermsRecord> = record(&["terms", "--combo", "P=1,1,1; c=3,2,-1; d=2", "--count", "12"]);
    assert_eq!(combo.result.rows, motzkin.result.rows);
    assert_eq!(combo.input.selector.kind, "combo");
}

#[test]
fn formats() {
    let out = ctseq(&["terms", "--seq", "catalan", "--count", "4", "--format", "csv"]);
    assert_eq!(stdout(&out), "n,value\n0,1\n1,1\n2,2\n3,5\n");
    let out = ctseq(&["classify", "--seq", "motzkin", "--p", "3", "--format", "plain"]);
    let text = stdout(&out);
    assert!(text.contains("verdict: zero_density_one"));
    assert!(text.contains("zero_digit: 2"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["terms", "--seq", "nope"]), 3);
    assert_eq!(code(&["classify", "--seq", "motzkin", "--p", "4"]), 3);
    assert_eq!(code(&["terms", "--seq", "motzkin", "--P", "1,1,1"]), 3);
    assert_eq!(code(&["witness", "--seq", "motzkin", "--p", "5", "--start", "19"]), 3);
    assert_eq!(code(&["terms", "--seq", "motzkin", "--bogus"]), 3);
    assert_eq!(code(&["terms", "--seq", "motzkin", "--count", "100000"]), 4);
    assert_eq!(code(&["min-recurrence", "--seq", "motzkin", "--p", "5", "--horizon", "99999999999"]), 4);
    assert_eq!(code(&["reduce", "--seq", "motzkin", "--p", "2"]), 2);
    assert_eq!(code(&["--help"]), 0);
}
