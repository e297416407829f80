use closurelab::props::{dim0_suite, newton_cross_oracle, run_property_suite};

#[test]
fn dim0_suite_at_scale() {
    let r = dim0_suite(2024, 50);
    assert_eq!(r.instances, 50);
    assert!(r.failures.is_empty(), "{:?}", r.failures);
    assert!(r.max_certificate_degree <= 4);
}

#[test]
fn property_suite_at_scale() {
    let r = run_property_suite(2024, 200);
    assert!(r.violations.is_empty(), "{:?}", r.violations);
    assert!(r.tallies.iter().all(|t| t.checked > 0), "{:?}", r.tallies);
}

#[test]
fn cross_oracle_at_scale() {
    let r = newton_cross_oracle(2024, 100);
    assert_eq!(r.ideals, 100);
    assert!(r.failures.is_empty(), "{:?}", r.failures);
    assert_eq!(r.certified, r.closure_generators);
    assert!(r.max_degree_used <= 6);
}
