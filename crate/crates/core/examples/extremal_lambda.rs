//! How far a perturbed χ(a, b) drifts from extremality.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ramsey_multiplicity::extremal::{chi, extremal_parameter, perturb, ExtremalMode};

fn main() -> ramsey_multiplicity::Result<()> {
    let base = chi(7, 6)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for p in [0.0, 0.02, 0.05, 0.1, 0.2] {
        let c = perturb(&base, p, &mut rng);
        let exact = extremal_parameter(&c, ExtremalMode::Exact)?;
        let local = extremal_parameter(&c, ExtremalMode::LocalSearch { restarts: 16, seed: 5 })?;
        println!(
            "p = {p:<4}  lambda* = {:.4} ({:?} inside, |A| = {})  local search {:.4}",
            exact.lambda_star,
            exact.inside_color,
            exact.a.len(),
            local.lambda_star
        );
    }
    Ok(())
}
