//! Structured cycle-count claims on seeded instances.

use ramsey_multiplicity::extremal::instances::{run_claim_suite, two_matching_exhaustive, StructuredClaim};

fn main() -> ramsey_multiplicity::Result<()> {
    for claim in [StructuredClaim::CommonNeighbor, StructuredClaim::BridgedCliques, StructuredClaim::Alternating] {
        let rows = run_claim_suite(claim, 50, 7)?;
        let tight =
            rows.iter().filter(|r| r.bound > 0).map(|r| r.exact as f64 / r.bound as f64).fold(f64::INFINITY, f64::min);
        println!(
            "{claim:?}: {}/{} pass, tightest exact/bound ratio {tight:.2}",
            rows.iter().filter(|r| r.pass).count(),
            rows.len()
        );
    }
    let tm = two_matching_exhaustive(4)?;
    println!("two-matching reduction: {} graphs, {} mismatches", tm.graphs, tm.mismatches);
    Ok(())
}
