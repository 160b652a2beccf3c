//! The kcol text format: build, encode, decode.

use ramsey_multiplicity::{kcol, Color, TwoColoring};

fn main() -> ramsey_multiplicity::Result<()> {
    // Red 5-cycle on K_5: the coloring with no monochromatic triangle.
    let mut c = TwoColoring::all_blue(5)?;
    for i in 0..5 {
        c.set(i, (i + 1) % 5, Color::Red);
    }
    let text = kcol::encode(&c);
    print!("{text}");
    let back = kcol::decode(&text)?;
    assert_eq!(back, c);
    for bad in ["5\n7ff\n", "5\n", "x\n0\n"] {
        println!("{bad:?}: {}", kcol::decode(bad).unwrap_err());
    }
    Ok(())
}
