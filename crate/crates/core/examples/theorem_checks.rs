//! Runs every structural check on a seeded batch of random braid contexts.

use subword_complex::batch::run_batch;
use subword_complex::coxeter::CoxeterSystem;

fn main() -> subword_complex::Result<()> {
    let groups = ["A3", "B3", "H3"]
        .iter()
        .map(|n| Ok((n.to_string(), CoxeterSystem::named(n)?)))
        .collect::<subword_complex::Result<Vec<_>>>()?;
    let report = run_batch(&groups, 2024, 60, 6, false, 4)?;
    println!("cases: {:?}", report.cases);
    println!("failures: {:?}", report.failures);
    for c in report.checks.iter().filter(|c| !c.failures().is_empty()).take(3) {
        println!("{} Q = {} ({},{}) Q' = {}: {:?}", c.group, c.q, c.i, c.j, c.q_prime, c.failures());
    }
    Ok(())
}
