//! Runs the identity suite and prints the summary line and any failures.

use shuffle_lattice::identities::{inner_sum_lhs, inner_sum_rhs, vandermonde_step};
use shuffle_lattice::verify::{identities_suite, SuiteConfig};
use shuffle_lattice::Result;

pub fn run_example() -> Result<()> {
    println!("inner sum (3,2,2): {}", inner_sum_lhs(3, 2, 2));
    assert_eq!(inner_sum_lhs(3, 2, 2), inner_sum_rhs(3, 2, 2));
    let step = vandermonde_step(2, 3);
    println!("vandermonde (2,3): {} = {}", step.expanded, step.collapsed);

    let report = identities_suite(&SuiteConfig::default());
    let passed = report.verdicts.iter().filter(|v| v.passed).count();
    println!("{passed}/{} identity checks passed", report.verdicts.len());
    for failure in report.failures() {
        println!("FAIL {} {:?}", failure.name, failure.params);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
