use std::process::Command;

use serde_json::Value;
use zerosum::classify::ClassificationReport;
use zerosum::counting::CensusReport;
use zerosum::egz::{EgzExtremalReport, EgzReport};
use zerosum::extremal::ExtremalSpec;
use zerosum::lemmas::{ApProbeReport, CrtRepresentation};
use zerosum::witness::Witness;
use zerosum::ResidueSequence;
use zerosum_cli::{run, Outcome, EXIT_BUDGET, EXIT_INVALID, EXIT_OK, EXIT_VIOLATION};

fn zs(args: &[&str]) -> Outcome {
    run(std::iter::once("zerosum").chain(args.iter().copied()))
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut v = vec!["--output", "structured"];
    v.extend_from_slice(args);
    let out = zs(&v);
    let doc = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {:?}", out));
    (out.code, doc)
}

#[test]
fn classify_worked_example() {
    let (code, doc) = structured(&["classify", "--input", "p=11; A=1^2,7"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["zero_sum_free"], true);
    assert_eq!(doc["complete"], false);
    let back: ClassificationReport = serde_json::from_value(doc).unwrap();
    assert_eq!(back.sequence, "p=11; A=1^2,7".parse::<ResidueSequence>().unwrap());
}

#[test]
fn classify_accepts_json_input() {
    let text = zs(&["classify", "--input", r#"{"p":11,"elements":[[1,2],[7,1]]}"#, "--l", "2,3"]);
    assert_eq!(text.code, EXIT_OK);
    assert!(text.stdout.contains("zero_sum_free: true"));
    assert!(text.stdout.contains("l = 3"));
}

#[test]
fn sumset_reports_members() {
    let (code, doc) = structured(&["sumset", "--input", "p=11; A=1^2,7"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["sumset"]["residues"], serde_json::json!([1, 2, 7, 8, 9]));
    let (_, doc) = structured(&["sumset", "--input", "p=11; A=1^2,7", "--l", "2"]);
    assert_eq!(doc["sumset"]["residues"], serde_json::json!([2, 8]));
}

#[test]
fn egz_verify_small_prime() {
    let (code, doc) = structured(&["egz", "verify", "-p", "5"]);
    assert_eq!(code, EXIT_OK);
    let r: EgzReport = serde_json::from_value(doc).unwrap();
    assert!(r.counterexamples.is_empty());
    assert_eq!(r.evaluated, 715);
}

#[test]
fn egz_extremal_round_trips() {
    let (code, doc) = structured(&["egz", "extremal", "-p", "5"]);
    let r: EgzExtremalReport = serde_json::from_value(doc).unwrap();
    assert_eq!(code, if r.deviations == 0 { EXIT_OK } else { EXIT_VIOLATION });
    assert!(!r.entries.is_empty());
}

#[test]
fn witness_incomplete_example() {
    let (code, doc) = structured(&["witness", "--theorem", "2", "--input", "p=11; A=2,4,6,8", "--budget", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["found"], true);
    assert_eq!(doc["valid"], true);
    let w: Witness = serde_json::from_value(doc["witness"].clone()).unwrap();
    let Witness::Incomplete(w) = &w else { panic!("wrong theorem: {w:?}") };
    assert_eq!(w.b, 5);
    assert!(w.a_flat.is_empty());
    let a: ResidueSequence = "p=11; A=2,4,6,8".parse().unwrap();
    assert!(w.validate(&a).unwrap());
}

#[test]
fn witness_text_has_proofline() {
    let out = zs(&["witness", "--theorem", "1", "--input", "p=11; A=1^2,7"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("< 11"), "{}", out.stdout);
}

#[test]
fn witness_precondition_is_invalid_input() {
    // 1 + 10 = 0, so there is no zero-sum-free certificate to find.
    let out = zs(&["witness", "--theorem", "1", "--input", "p=11; A=1,10"]);
    assert_eq!(out.code, EXIT_INVALID, "{out:?}");
    let out = zs(&["witness", "--theorem", "3", "--input", "p=11; A=1,2"]);
    assert_eq!(out.code, EXIT_INVALID, "missing --l");
}

#[test]
fn budget_refusal_exits_3() {
    let out = zs(&["--max-enumeration", "10", "egz", "verify", "-p", "7"]);
    assert_eq!(out.code, EXIT_BUDGET);
    assert!(out.stderr.contains("27132"), "{}", out.stderr);
    let (code, doc) = structured(&["--max-enumeration", "10", "count", "census", "-p", "7", "-m", "2"]);
    assert_eq!(code, EXIT_BUDGET);
    assert_eq!(doc["error"]["kind"], "budget_exceeded");
    assert_eq!(doc["error"]["required"], "2187");
}

#[test]
fn invalid_inputs_exit_2() {
    for args in [
        vec!["bogus"],
        vec![],
        vec!["classify", "--input", "p=12; A=1"],
        vec!["classify", "--input", "p=11 A=1"],
        vec!["classify", "--input", "p=11; A=1^12"],
        vec!["witness", "--theorem", "4", "--input", "p=11; A=1"],
        vec!["egz", "verify", "-p", "9"],
        vec!["extremal", "--family", "A4", "-p", "11", "-m", "1"],
        vec!["extremal", "-p", "11", "-m", "1"],
        vec!["verify", "--criterion", "12"],
        vec!["--threads", "0", "count", "partitions", "-n", "5"],
    ] {
        let out = zs(&args);
        assert_eq!(out.code, EXIT_INVALID, "{args:?}: {out:?}");
    }
    let out = zs(&["bogus"]);
    assert!(out.stderr.contains("Usage"), "{}", out.stderr);
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(zs(&["--help"]).code, EXIT_OK);
    assert_eq!(zs(&["--version"]).code, EXIT_OK);
}

#[test]
fn extremal_family_round_trips() {
    let (code, doc) = structured(&["extremal", "--family", "A1", "-p", "11", "-m", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["feasible"], true);
    let spec: ExtremalSpec = serde_json::from_value(doc["spec"].clone()).unwrap();
    assert!(zerosum::classify::is_zero_sum_free(&spec.sequence).unwrap());
}

#[test]
fn extremal_scan_and_special_prime() {
    let (code, doc) = structured(&["extremal", "scan", "-p", "13"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["zero_sum_free"], serde_json::json!([]));
    let (code, doc) = structured(&["extremal", "zerofree3", "-p", "5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["special"], true);
    let (_, doc) = structured(&["extremal", "n-of-p", "-p", "11"]);
    assert_eq!(doc["n"], 5);
}

#[test]
fn partition_counts() {
    let (code, doc) = structured(&["count", "partitions", "-n", "5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["count"], "7");
    let (_, doc) = structured(&["count", "partitions", "-n", "4", "-m", "2"]);
    assert_eq!(doc["count"], "4");
    let (_, doc) = structured(&["count", "partitions", "-n", "5", "-m", "1", "--table"]);
    assert_eq!(doc["values"], serde_json::json!(["1", "1", "1", "2", "2", "3"]));
}

#[test]
fn census_round_trips() {
    let (code, doc) = structured(&["count", "census", "-p", "5", "-m", "1"]);
    assert_eq!(code, EXIT_OK);
    let r: CensusReport = serde_json::from_value(doc).unwrap();
    assert!(r.count_zero_sum_free >= r.partition_lower_bound);
}

#[test]
fn lemma_commands() {
    let (code, doc) = structured(&["lemma", "zero-subset", "-D", "4", "--x", "1,1,1,1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["selection"]["values"], serde_json::json!([1, 1, 1, 1]));
    let (code, doc) = structured(&["lemma", "crt", "--d", "4,6", "-r", "5"]);
    assert_eq!(code, EXIT_OK);
    let c: CrtRepresentation = serde_json::from_value(doc["representation"].clone()).unwrap();
    assert!(c.satisfies_unit_fractions());
    let (code, doc) = structured(&["lemma", "crt-bounded", "--d", "3,5", "-D", "7", "-r", "4"]);
    assert_eq!(code, EXIT_OK);
    assert!(doc["a_sum"].as_u64().unwrap() <= 7);
    let (code, _) = structured(&["lemma", "full-sumset", "-D", "5", "--x", "1,2,3,4,1", "-r", "3"]);
    assert_eq!(code, EXIT_OK);
    let (code, _) = structured(&["lemma", "olson-probe", "-p", "7"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn egz_greedy_and_structure() {
    let (code, doc) = structured(&["egz", "greedy", "--input", "p=11; A=0^10,1^8,3,4"]);
    assert_eq!(code, EXIT_OK);
    let s: ResidueSequence = serde_json::from_value(doc["result"]["subsequence"].clone()).unwrap();
    assert_eq!(s.len(), 11);
    assert_eq!(s.total(), 0);
    let (code, doc) = structured(&["egz", "structure", "--input", "p=5; A=1^4,2^4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["m_sum"], 8);
}

#[test]
fn seeded_output_is_byte_identical() {
    let args = ["--output", "structured", "lemma", "ap-probe", "-p", "31", "--size", "8", "--l", "3", "--trials", "20", "--seed", "7"];
    let a = zs(&args);
    let b = zs(&args);
    let c = zs(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let r: ApProbeReport = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(r.seed, 7);
    assert_eq!(r.trials.len(), 20);
}

#[test]
fn parallel_reports_do_not_depend_on_thread_count() {
    let base = ["--output", "structured", "egz", "extremal", "-p", "5"];
    let one = zs(&[&["--threads", "1"], &base[..]].concat());
    let many = zs(&[&["--threads", "4"], &base[..]].concat());
    assert_eq!(one, many);
}

#[test]
fn verify_single_criterion() {
    let (code, doc) = structured(&["verify", "--level", "quick", "--criterion", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["criteria"][0]["passed"], true);
    assert_eq!(doc["total"], 1);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_zerosum");
    let ok = Command::new(bin).args(["classify", "--input", "p=11; A=1^2,7"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("zero_sum_free: true"));
    let bad = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INVALID));
    let refused = Command::new(bin)
        .args(["egz", "verify", "-p", "7"])
        .env("ZEROSUM_MAX_ENUMERATION", "100")
        .output()
        .unwrap();
    assert_eq!(refused.status.code(), Some(EXIT_BUDGET));
}
