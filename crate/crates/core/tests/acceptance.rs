//! The twelve acceptance criteria, each one suite at its default bounds and
//! within its wall-clock budget. Runs without the libtest harness so the
//! PASS/FAIL table is always printed.

use std::process::ExitCode;

use decat::suites::{run_suite, Bounds};

const CRITERIA: [(u32, &str, &str, f64); 12] = [
    (1, "sym", "symmetric-function kernel", 60.0),
    (2, "zzz", "rectangle relations", 60.0),
    (3, "ja", "rectangle change of basis", 120.0),
    (4, "qqq", "wedge product vs current-algebra transport", 300.0),
    (5, "r7", "E-F commutator table", 60.0),
    (6, "ap2", "bubble slides past E", 60.0),
    (7, "current", "Garland integrality and associativity", 300.0),
    (8, "k0", "q=1 canonical basis vs degree-zero trace", 60.0),
    (9, "dims", "graded dimensions", 30.0),
    (10, "cor34", "minimal degrees of B+ and B-", 60.0),
    (11, "vpres", "presentation normal forms", 120.0),
    (12, "hh", "Hochschild homology of upper-triangular categories", 120.0),
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (id, suite, what, budget) in CRITERIA {
        let (pass, detail) = match run_suite(suite, &Bounds::new()) {
            Ok(r) if r.passed() && r.seconds <= budget => (true, format!("{:.2}s of {budget:.0}s", r.seconds)),
            Ok(r) if r.passed() => (false, format!("over budget: {:.2}s of {budget:.0}s", r.seconds)),
            Ok(r) => {
                let bad: Vec<String> = r
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| format!("{} {}", c.id, c.witness.as_ref().map(|w| w.to_string()).unwrap_or_default()))
                    .collect();
                (false, bad.join("; "))
            }
            Err(e) => (false, e.to_string()),
        };
        if !pass {
            failed += 1;
        }
        println!("criterion {id:>2} [{suite}] {what}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
