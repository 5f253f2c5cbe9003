//! Acceptance suite: one line per criterion with its status, runtime and
//! budget, followed by the failed checks.  The test fails if any claim
//! fails or overruns its budget.

use boundary_core::repro::{claims, ReproConfig};

#[test]
fn acceptance_criteria() {
    let config = ReproConfig::default();
    let mut failed = Vec::new();
    for claim in claims() {
        let result = claim.run(&config);
        let verdict = if result.status.holds() && result.within_budget() { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {verdict}  {}", result.criterion, result.summary());
        for check in &result.checks {
            println!("      [{}] {}: {}", if check.ok { "ok" } else { "FAILED" }, check.name, check.detail);
        }
        if verdict == "FAIL" {
            failed.push(result.criterion);
        }
    }
    assert!(failed.is_empty(), "criteria failing: {failed:?}");
}
