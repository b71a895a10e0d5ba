//! The 3-triangulation quiver of a triangle and a mutation at its face node.

use sl3qt::quiver::mutate_quiver_at;
use sl3qt::surface::{build_3triangulation_quiver, Triangulation};
use sl3qt::verify::fixtures;

fn main() -> sl3qt::Result<()> {
    let tri = Triangulation::parse(fixtures::TRIANGLE)?;
    let (seed, _) = build_3triangulation_quiver(&tri);
    println!("quiver:\n{}", seed.render());
    let m = mutate_quiver_at(&seed, "t:t")?;
    println!("mutated at t:t:\n{}", m.render());
    match mutate_quiver_at(&seed, "a:1") {
        Err(e) => println!("a:1: {e}"),
        Ok(_) => unreachable!("boundary nodes are frozen"),
    }
    Ok(())
}
