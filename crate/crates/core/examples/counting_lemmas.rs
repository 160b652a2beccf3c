//! Counting-lemma bounds against exact transversal path and cycle counts.

use ramsey_multiplicity::regular::{verify_counting_lemma, CountingLemma, GridSpec, Verdict};

fn main() -> ramsey_multiplicity::Result<()> {
    let grid = GridSpec { instances: 10, ..GridSpec::default() };
    for lemma in [CountingLemma::Part1, CountingLemma::Part2, CountingLemma::Cycle] {
        let rep = verify_counting_lemma(&grid, lemma, 7)?;
        println!("{lemma:?}: {} pass, {} vacuous, {} fail", rep.pass, rep.vacuous, rep.fail);
        // Where the bounds bite, how much room is left.
        if let Some(r) = rep
            .rows
            .iter()
            .filter(|r| r.verdict == Verdict::Pass && r.bound >= 1.0)
            .max_by(|a, b| (a.bound / a.exact.unwrap() as f64).total_cmp(&(b.bound / b.exact.unwrap() as f64)))
        {
            println!(
                "  tightest: t={} n={} {} len {}: bound {:.1} vs exact {}",
                r.t,
                r.class_size,
                r.family,
                r.length,
                r.bound,
                r.exact.unwrap()
            );
        }
    }
    Ok(())
}
