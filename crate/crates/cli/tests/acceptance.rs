//! Every acceptance criterion, exact equality throughout. Run with
//! `--nocapture` to see one line per criterion.

use std::time::Duration;

use fusoid_cli::suites::{criterion, Scope, SUITES};

/// Wall-clock bound per criterion, where one is stated.
const BOUNDS: [Option<u64>; 10] = [Some(60), Some(120), None, Some(120), Some(600), Some(600), None, Some(900), Some(1200), None];

#[test]
fn acceptance() {
    let scope = Scope::default();
    let mut failed = Vec::new();
    for k in 1..=SUITES.len() {
        let name = SUITES[k - 1];
        let line = match criterion(k, &scope) {
            Ok(report) => {
                let elapsed = Duration::from_millis(report.wall_time_ms as u64);
                let in_time = BOUNDS[k - 1].map_or(true, |b| elapsed <= Duration::from_secs(b));
                let ok = report.passed() && in_time;
                if !ok {
                    failed.push(k);
                }
                let mut line = format!(
                    "criterion {k} ({name}): {} [{}/{} checks, {:.1} s{}]",
                    if ok { "PASS" } else { "FAIL" },
                    report.checks.iter().filter(|c| c.passed).count(),
                    report.checks.len(),
                    elapsed.as_secs_f64(),
                    BOUNDS[k - 1].map_or(String::new(), |b| format!(" of {b} s")),
                );
                for c in report.failures() {
                    line.push_str(&format!("\n    {} ({}): {}", c.id, c.anchor, c.counterexample.as_ref().map_or(String::new(), |v| v.to_string())));
                }
                line
            }
            Err(e) => {
                failed.push(k);
                format!("criterion {k} ({name}): FAIL [{e}]")
            }
        };
        println!("{line}");
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
