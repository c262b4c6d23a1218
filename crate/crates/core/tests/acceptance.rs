use std::io::Write;

use hankel_mb::acceptance::{run_acceptance, AcceptanceOptions};

#[test]
fn acceptance_criteria() {
    let report = run_acceptance(&AcceptanceOptions::default());
    // written to the raw handle so the table shows without --nocapture
    let mut err = std::io::stderr().lock();
    for c in &report.criteria {
        writeln!(err, "{}", c.line()).unwrap();
    }
    writeln!(err, "total {:.1} ms", report.elapsed_ms).unwrap();
    assert!(report.passed, "failing criteria: {:?}", report.failing());
}

#[test]
fn tightened_thresholds_are_detected() {
    let opts = AcceptanceOptions { tolerance_scale: 1e-12 };
    let report = hankel_mb::acceptance::run_criterion(1, &opts);
    assert!(!report.passed);
    let report = hankel_mb::acceptance::run_criterion(7, &opts);
    assert!(!report.passed);
}
