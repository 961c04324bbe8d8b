//! One test per acceptance criterion; each prints its pass/fail line.
//! Run with `cargo test -p zerosum --test acceptance -- --nocapture` to see them.

use zerosum::suite::{run_criterion, Level};

fn check(id: u32) {
    let r = run_criterion(id, Level::Full).expect("known criterion");
    println!("{}", r.line());
    assert!(r.passed, "criterion {id} failed: {}", r.detail);
    assert!(
        r.within_limit(),
        "criterion {id} took {:.2}s, limit {:.0}s",
        r.elapsed_secs,
        r.limit_secs
    );
}

#[test]
fn criterion_01_worked_example() {
    check(1);
}

#[test]
fn criterion_02_sumset_oracle_equivalence() {
    check(2);
}

#[test]
fn criterion_03_egz_exhaustive() {
    check(3);
}

#[test]
fn criterion_04_egz_extremal() {
    check(4);
}

#[test]
fn criterion_05_large_subsets_complete() {
    check(5);
}

#[test]
fn criterion_06_threshold_size_scan() {
    check(6);
}

#[test]
fn criterion_07_partition_counts() {
    check(7);
}

#[test]
fn criterion_08_census() {
    check(8);
}

#[test]
fn criterion_09_witness_validity() {
    check(9);
}

#[test]
fn criterion_10_lemma_toolkit() {
    check(10);
}

#[test]
fn criterion_11_invariant_battery() {
    check(11);
}
