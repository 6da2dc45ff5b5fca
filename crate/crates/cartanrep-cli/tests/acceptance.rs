//! Acceptance gate: one test per verification check, each printing a
//! pass/fail line with the expected and computed summaries. The checks are
//! the same ones `cartanrep verify` runs.

use cartanrep_cli::verify::{run_check, DEFAULT_SEED};

fn gate(name: &str) {
    let check = run_check(name, DEFAULT_SEED).expect("check is registered");
    let tag = if check.pass { "PASS" } else { "FAIL" };
    println!(
        "[{tag}] {} ({} ms)\n  expected: {}\n  actual:   {}",
        check.name, check.elapsed_ms, check.expected, check.actual
    );
    assert!(
        check.pass,
        "{name} failed\n  expected: {}\n  actual:   {}",
        check.expected, check.actual
    );
}

#[test]
fn criterion_01_cartan_constants() {
    gate("cartan-constants");
}

#[test]
fn criterion_02_projective_dims() {
    gate("projective-dims");
}

#[test]
fn criterion_03_root_bijection() {
    gate("root-bijection");
}

#[test]
fn criterion_04_form_identity() {
    gate("form-identity");
}

#[test]
fn criterion_05_euler_form() {
    gate("euler-form");
}

#[test]
fn criterion_06_reflection_adjunction() {
    gate("reflection-adjunction");
}

#[test]
fn criterion_07_tau_coherence() {
    gate("tau-coherence");
}

#[test]
fn criterion_08_gp_classification() {
    gate("gp-classification");
}

#[test]
fn criterion_09_ext_symmetry() {
    gate("ext-symmetry");
}

#[test]
fn criterion_10_non_dynkin() {
    gate("non-dynkin");
}

#[test]
fn criterion_11_non_root_witness() {
    gate("non-root-witness");
}
