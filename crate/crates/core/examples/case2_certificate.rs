//! Certified lower bounds for near-extremal colorings, checked against the
//! true count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ramsey_multiplicity::count::mono_counts;
use ramsey_multiplicity::extremal::{case2_lower_bound, chi, extremal_parameter, perturb, ExtremalMode};
use ramsey_multiplicity::PatternGraph;

fn main() -> ramsey_multiplicity::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in [5usize, 7] {
        let base = chi(k, k - 1)?;
        for _ in 0..4 {
            let c = perturb(&base, 0.04, &mut rng);
            let ext = extremal_parameter(&c, ExtremalMode::Exact)?;
            let (r, b) = mono_counts(&c, &PatternGraph::cycle(k)?)?;
            match case2_lower_bound(&c, k, ext.a, ext.b, ext.lambda_star.max(1e-3)) {
                Ok(cert) => println!("k = {k}: bound {} via {:?}, actual {}", cert.bound, cert.claim_used, r + b),
                Err(e) => println!("k = {k}: no certificate ({e}), actual {}", r + b),
            }
        }
    }
    Ok(())
}
