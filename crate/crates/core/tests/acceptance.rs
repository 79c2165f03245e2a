//! One line per acceptance criterion. Infeasible parts are reported, not
//! asserted; any failing part fails the test.

use std::io::Write;

use dirramsey::suite::{run_suite, Status, SuiteConfig};

#[test]
fn acceptance() {
    let reports = run_suite(&SuiteConfig::default());
    // Written to the process stdout directly so the lines survive output capture.
    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    for r in &reports {
        writeln!(out, "{}", r.line()).unwrap();
    }
    out.flush().unwrap();
    let failed: Vec<u8> = reports.iter().filter(|r| r.status() == Status::Fail).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
