//! The self-check suite passes as built and notices a corrupted zeta value.

use paramseries::verify::{run_checks, VerifyConfig, CHECK_IDS};

#[test]
fn default_suite_passes() {
    let report = run_checks(&VerifyConfig::default()).unwrap();
    for o in &report.outcomes {
        println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.id, o.detail);
    }
    for (id, f) in report.findings() {
        println!("finding {id}: {f}");
    }
    assert_eq!(report.outcomes.len(), CHECK_IDS.len());
    assert!(report.passed());
}

#[test]
fn injected_fault_is_detected() {
    let report = run_checks(&VerifyConfig::default().with_fault()).unwrap();
    let failed: Vec<_> = report.failures().map(|o| o.id).collect();
    println!("failed under fault: {failed:?}");
    assert!(failed.contains(&"amore-pi"));
    assert!(!report.passed());
}

#[test]
fn only_flag_selects_checks() {
    let cfg = VerifyConfig {
        only: vec!["binomial-identity".into()],
        n_max: 200,
        ..Default::default()
    };
    let report = run_checks(&cfg).unwrap();
    assert_eq!(report.outcomes.len(), 1);
    assert!(report.passed());
}
