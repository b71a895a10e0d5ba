//! Per-term exponents and the exponents of the first two mutations.

use sl3qt::verify::FlipSetup;

fn main() -> sl3qt::Result<()> {
    let s = FlipSetup::quadrilateral();
    for id in ["case1", "case5"] {
        let w = s.web(id)?;
        println!("{id}\n{}", s.step_one_table(w));
    }
    Ok(())
}
