//! One test per acceptance criterion.
//!
//! Every test writes its `[PASS]`/`[FAIL]` line straight to the stderr handle
//! (not through `eprintln!`), so the line shows up in `cargo test` output
//! whether or not the harness captures it.

use std::io::Write;

use monotone_curvature::verify::{self, CheckReport};
use monotone_curvature::Result;

fn check(id: u8, run: fn() -> Result<CheckReport>) {
    let report = match run() {
        Ok(report) => report,
        Err(e) => panic!("criterion {id} aborted: {e}"),
    };
    assert_eq!(report.id, id);
    let _ = writeln!(std::io::stderr().lock(), "{report}");
    assert!(report.passed, "{report}");
}

#[test]
fn criterion_01_origin_values() {
    check(1, verify::origin_values);
}

#[test]
fn criterion_02_three_route_agreement() {
    check(2, verify::three_route_agreement);
}

#[test]
fn criterion_03_series_coefficients_and_laurent_cancellation() {
    check(3, verify::series_verification);
}

#[test]
fn criterion_04_moment_identities() {
    check(4, verify::moment_identities);
}

#[test]
fn criterion_05_two_pair_family_local_minimum() {
    check(5, verify::family_minimum);
}

#[test]
fn criterion_06_single_pair_positivity() {
    check(6, verify::single_pair_positivity);
}

#[test]
fn criterion_07_non_monotone_exhibit() {
    check(7, verify::monotonicity_exhibit);
}

#[test]
fn criterion_08_two_level_spectral_reduction() {
    check(8, verify::spectral_reduction);
}

#[test]
fn criterion_09_three_level_second_differences() {
    check(9, verify::three_level_minimum);
}

#[test]
fn criterion_10_q_zero_family_ledger() {
    check(10, verify::q_zero_ledger);
}
