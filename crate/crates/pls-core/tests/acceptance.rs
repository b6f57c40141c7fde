//! Acceptance suite: runs every criterion at its pinned tolerance and prints
//! one pass/fail line per criterion.

use pls_core::suite::{run_suite, CRITERION_COUNT};

#[test]
fn acceptance_criteria() {
    let report = run_suite(0xACCE97ED, None);
    assert_eq!(report.criteria.len(), CRITERION_COUNT);
    let mut all_pass = true;
    for c in &report.criteria {
        println!(
            "criterion {}: {:<26} {} ({} ms)",
            c.id,
            c.name,
            if c.pass { "PASS" } else { "FAIL" },
            c.millis
        );
        if !c.pass {
            all_pass = false;
            for line in &c.details {
                if line.starts_with("FAIL") {
                    println!("    {line}");
                }
            }
        }
    }
    assert!(all_pass, "acceptance criteria failed");
}
