//! Exact and sampled regularity on random bipartite pairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ramsey_multiplicity::regular::{check_regularity, density, regularity_defect, Regularity, RegularityMode};
use ramsey_multiplicity::{SimpleGraph, VertexSet};

fn main() -> ramsey_multiplicity::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (x, y) = (VertexSet::range(0, 10), VertexSet::range(10, 20));
    for p in [0.2, 0.5, 0.8] {
        let mut g = SimpleGraph::empty(20)?;
        for u in x.iter() {
            for v in y.iter() {
                if rng.random_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        let defect = regularity_defect(x, y, &g)?;
        println!("p = {p}: density {:.3}, defect {defect:.4}", density(x, y, &g)?);
        for eps in [0.1, 0.3] {
            let exact = check_regularity(x, y, &g, eps, RegularityMode::Exact)?;
            let sampled = check_regularity(x, y, &g, eps, RegularityMode::Randomized { samples: 2000, seed: 9 })?;
            let show = |r: &Regularity| match r {
                Regularity::Regular => "regular".to_string(),
                Regularity::Irregular { deviation, .. } => format!("irregular ({deviation:.3})"),
                Regularity::Unknown { .. } => "unknown".to_string(),
            };
            println!("  eps = {eps}: exact {}, sampled {}", show(&exact), show(&sampled));
        }
    }
    Ok(())
}
