//! The thirteen acceptance criteria, each with its tolerance and time limit.
//! One PASS/FAIL line per criterion goes straight to stderr so it shows up
//! even when test output is captured.

use std::io::Write;

use cutpoint_cli::{verify_with, Suite};

#[test]
fn acceptance_criteria() {
    let results = verify_with(Suite::All, |r| {
        let _ = writeln!(std::io::stderr(), "{r}");
    });
    assert_eq!(results.len(), 13);
    let failed: Vec<String> = results.iter().filter(|r| !r.passed).map(ToString::to_string).collect();
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}
