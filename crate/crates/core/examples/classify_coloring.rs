//! Reduced-graph classification of a blown-up coloring, and the
//! cycles-or-partition dichotomy on a few dense graphs.

use ramsey_multiplicity::extremal::{chi, ExtremalMode};
use ramsey_multiplicity::regular::{RegimeParams, RegularityMode};
use ramsey_multiplicity::stability::{block_partition, main2_classify, ns_check, Classification, DichotomyOutcome};
use ramsey_multiplicity::SimpleGraph;

fn main() -> ramsey_multiplicity::Result<()> {
    let c = chi(9, 9)?;
    let parts = block_partition(18, 6)?;
    let mut p = RegimeParams::strict(0.001, 0, parts.len())?;
    p.lambda = 0.1;
    let rep = main2_classify(&c, &parts, &p, RegularityMode::Exact, ExtremalMode::Exact)?;
    match &rep.outcome {
        Classification::Case1 { t, color, .. } => println!("chi(9,9): ring of length {t} in {color:?}"),
        Classification::Case2 { assessment, .. } => {
            println!("chi(9,9): extremal, lambda* = {}", assessment.lambda_star)
        }
        Classification::Inconclusive { diagnostics } => println!("chi(9,9): inconclusive: {diagnostics:?}"),
    }

    for (name, g) in [("K6,6", SimpleGraph::complete_bipartite(6, 6)?), ("K12", SimpleGraph::complete(12)?)] {
        match ns_check(&g, 0.05, 0.001)?.outcome {
            DichotomyOutcome::CyclesFound { max_len, .. } => println!("{name}: every cycle length 3..={max_len}"),
            DichotomyOutcome::PartitionFound { u1, u2, structure, .. } => {
                println!("{name}: {structure:?} split {} + {}", u1.len(), u2.len())
            }
            DichotomyOutcome::Inconclusive { diagnostics } => println!("{name}: {diagnostics:?}"),
        }
    }
    Ok(())
}
