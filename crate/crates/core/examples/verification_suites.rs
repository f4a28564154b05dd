//! Runs every invariant suite and prints one line per check.

use hecke_eisenstein::suites::{run_suite, Suite, SuiteOptions};
use hecke_eisenstein::Result;

fn main() -> Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let reports = run_suite(Suite::All, &SuiteOptions { seed, ..Default::default() })?;
    for r in &reports {
        println!("{}", r.summary_line());
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    println!("{} checks, {} failed", reports.len(), failed);
    Ok(())
}
