//! Acceptance suite: one test per criterion of the reproduction manifest,
//! each printing a pass/fail line. The criterion bodies live in
//! `dmq_cli::reproduce` so the `reproduce` subcommand runs the same checks.

use dmq_cli::reproduce;

fn check(id: u32, name: &str, r: Result<String, String>) {
    match &r {
        Ok(detail) => println!("[PASS] criterion {id:>2}: {name} - {detail}"),
        Err(detail) => println!("[FAIL] criterion {id:>2}: {name} - {detail}"),
    }
    if let Err(detail) = r {
        panic!("criterion {id} ({name}) failed: {detail}");
    }
}

#[test]
fn acceptance_01_frobenius_polynomials() {
    check(1, "Frobenius polynomials", reproduce::criterion_1());
}

#[test]
fn acceptance_02_resultant() {
    check(2, "resultant", reproduce::criterion_2());
}

#[test]
fn acceptance_03_determinant_index() {
    check(3, "determinant index", reproduce::criterion_3());
}

#[test]
fn acceptance_04_density_counts() {
    check(4, "density counts", reproduce::criterion_4());
}

#[test]
fn acceptance_05_group_structure() {
    check(5, "group structure", reproduce::criterion_5());
}

#[test]
fn acceptance_06_oracle_agreement() {
    check(6, "oracle agreement", reproduce::criterion_6());
}

#[test]
fn acceptance_07_certification_of_examples() {
    check(7, "certification of the example modules", reproduce::criterion_7());
}

#[test]
fn acceptance_08_negative_control() {
    check(8, "negative control", reproduce::criterion_8());
}

#[test]
fn acceptance_09_property_suite() {
    check(9, "property suite", reproduce::criterion_9());
}

#[test]
fn acceptance_10_sl2_criterion_equivalence() {
    check(10, "SL2 criterion equivalence", reproduce::criterion_10());
}
