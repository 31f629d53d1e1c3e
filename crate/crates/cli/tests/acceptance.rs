//! Acceptance gate: every criterion at its pinned tolerance, one line each.

use std::path::PathBuf;
use std::process::ExitCode;

use maxint_cli::verify::{run_criterion, Context, CRITERIA};

fn main() -> ExitCode {
    let ctx = Context {
        bin: PathBuf::from(env!("CARGO_BIN_EXE_maxint")),
    };
    let mut failed = 0;
    for c in CRITERIA {
        let report = run_criterion(c, &ctx);
        println!("{}", report.line());
        if !report.passed() {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        CRITERIA.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
