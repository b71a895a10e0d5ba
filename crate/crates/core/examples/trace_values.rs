//! Quantum trace values of an oriented edge crossing two triangles, in all nine states.

use sl3qt::cli::{Render, Style};
use sl3qt::trace::StatePair;
use sl3qt::verify::FlipSetup;

fn main() -> sl3qt::Result<()> {
    let s = FlipSetup::quadrilateral();
    let w = s.web("case3")?;
    let sf = s.before();
    let path = &s.webs[w].0;
    let latex = Style { render: Render::LatexLike, omega_one: false };
    for st in StatePair::all() {
        let v = sf.edge_trace(path, st)?;
        println!("{st} {}", Style::default().show(s.seed(), &v));
        println!("      {}", latex.show(s.seed(), &v));
    }
    Ok(())
}
