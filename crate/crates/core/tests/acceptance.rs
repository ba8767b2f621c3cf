//! Acceptance suite: each criterion of the verification battery runs as
//! its own test, so `cargo test --test acceptance` prints one pass/fail
//! line per criterion. The same checks back `extclass verify-paper`.

use extclass_core::verify::run_suite;

fn seed() -> u64 {
    std::env::var("EXTCLASS_SEED")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(0)
}

fn run(id: &str) {
    let results = run_suite(Some(id), seed()).expect("suite ran");
    assert_eq!(results.len(), 1, "check id `{id}` should match exactly one check");
    let r = &results[0];
    println!(
        "{} {} — {}",
        if r.passed { "PASS" } else { "FAIL" },
        r.id,
        r.details.join("; ")
    );
    assert!(r.passed, "{}: {}", r.name, r.details.join("; "));
}

#[test]
fn criterion_1_cohomology_dims() {
    run("cohomology-dims");
}

#[test]
fn criterion_2_coboundary_identities() {
    run("coboundary-identities");
}

#[test]
fn criterion_3_annihilator_formula() {
    run("annihilator-formula");
}

#[test]
fn criterion_4_orbit_counts() {
    run("orbit-counts");
}

#[test]
fn criterion_5_classification() {
    run("classification");
}

#[test]
fn criterion_6_pairwise_distinctness() {
    run("pairwise-distinctness");
}

#[test]
fn criterion_7_parameter_inversion() {
    run("parameter-inversion");
}

#[test]
fn criterion_8_decompose_roundtrip() {
    run("decompose-roundtrip");
}

#[test]
fn criterion_9_aut_shapes() {
    run("aut-shapes");
}
