//! Monochromatic cycle census of the two-clique colorings χ(a, b).

use ramsey_multiplicity::count::mono_counts;
use ramsey_multiplicity::extremal::chi;
use ramsey_multiplicity::PatternGraph;

fn main() -> ramsey_multiplicity::Result<()> {
    println!("{:>8} {:>4} {:>10} {:>10}", "chi", "k", "red", "blue");
    for k in [3usize, 5, 7] {
        for (a, b) in [(k - 1, k - 1), (k, k - 1)] {
            let (red, blue) = mono_counts(&chi(a, b)?, &PatternGraph::cycle(k)?)?;
            println!("{:>8} {k:>4} {red:>10} {blue:>10}", format!("({a},{b})"));
        }
    }
    Ok(())
}
