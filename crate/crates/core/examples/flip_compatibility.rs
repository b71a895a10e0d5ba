//! The coordinate change of a diagonal flip carries trace values to trace values.

use sl3qt::mutation::is_laurent;
use sl3qt::qtorus::{classicalize, render};
use sl3qt::trace::StatePair;
use sl3qt::verify::FlipSetup;

fn main() -> sl3qt::Result<()> {
    let s = FlipSetup::quadrilateral();
    let t = std::time::Instant::now();
    let mut agree = 0;
    for (p, q) in &s.webs {
        for st in StatePair::all() {
            let before = s.before().edge_trace(p, st)?;
            let after = s.after().edge_trace(q, st)?;
            let image = s.chain.theta(&after)?;
            let ok = is_laurent(&image).as_ref() == Some(&before);
            let classical = s.chain.theta_classical(&classicalize(&after))? == Some(classicalize(&before));
            agree += usize::from(ok && classical);
            if st == StatePair::new(1, 2)? {
                println!("{} {st}: {}", p.id, render(s.seed(), &before));
            }
        }
    }
    println!("{agree}/{} values agree in {:?}", 9 * s.webs.len(), t.elapsed());
    Ok(())
}
