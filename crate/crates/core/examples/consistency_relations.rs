//! Involution, commuting square and pentagon relations of quantum mutation.

use sl3qt::cli::parse_relation;
use sl3qt::mutation::exact::check_relation;
use sl3qt::quiver::Seed;

fn main() -> sl3qt::Result<()> {
    let seed = Seed::parse("node 1\nnode 2\nnode 3\neps 1 2 1\neps 1 3 0\neps 2 3 -1\n")?;
    for spec in ["all", "1 2 1 2", "pentagon:2,3"] {
        for (name, word) in parse_relation(&seed, spec)? {
            println!("{:5} {name}", check_relation(&seed, &word)?);
        }
    }
    Ok(())
}
