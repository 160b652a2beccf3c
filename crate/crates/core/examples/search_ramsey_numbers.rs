//! Small Ramsey numbers by exhaustive search.
//!
//!     cargo run --release --example search_ramsey_numbers -- C4 K1,3 P5

use ramsey_multiplicity::search::{ramsey_number, Budget};
use ramsey_multiplicity::{kcol, PatternGraph};

fn main() -> ramsey_multiplicity::Result<()> {
    let mut names: Vec<String> = std::env::args().skip(1).collect();
    if names.is_empty() {
        names = ["K3", "C4", "P4", "P5", "K1,3"].map(String::from).to_vec();
    }
    for name in names {
        let h: PatternGraph = name.parse()?;
        let r = ramsey_number(&h, 10, &Budget::default())?;
        print!("r({h}) = {:?} after {} nodes", r.value(), r.stats.nodes);
        if let Some(w) = &r.witness_below {
            print!("; avoiding coloring {}", kcol::encode(w).replace('\n', " "));
        }
        println!();
    }
    Ok(())
}
