//! M(H, n) across board sizes, and the threshold value m(H) = M(H, r(H)).

use std::time::Instant;

use ramsey_multiplicity::search::{multiplicity, threshold_multiplicity, Budget, Symmetry};
use ramsey_multiplicity::PatternGraph;

fn main() -> ramsey_multiplicity::Result<()> {
    let budget = Budget::default().with_threads(std::thread::available_parallelism().map_or(1, |n| n.get()));
    let k3 = PatternGraph::complete(3)?;
    for n in 3..=8 {
        let m = multiplicity(&k3, n, &budget)?;
        println!("M(K3, {n}) = {} ({} nodes)", m.value, m.stats.nodes);
    }
    for name in ["K2", "K1,2", "K1,3", "K3", "C4"] {
        let h: PatternGraph = name.parse()?;
        let t = threshold_multiplicity(&h, 9, &budget)?;
        if let Some(m) = t.multiplicity {
            println!("m({h}) = {} at n = {}", m.value, m.n);
        }
    }
    // How much the symmetry reductions save.
    let c5 = PatternGraph::cycle(5)?;
    for sym in [Symmetry::None, Symmetry::ColorSwap, Symmetry::Transpositions] {
        let start = Instant::now();
        let m = multiplicity(&c5, 8, &budget.clone().with_symmetry(sym))?;
        println!("M(C5, 8) = {} with {sym:?}: {} nodes, {:.2?}", m.value, m.stats.nodes, start.elapsed());
    }
    Ok(())
}
