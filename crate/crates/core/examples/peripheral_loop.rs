//! A loop around a puncture: three positive terms and a flip-compatible highest term.

use sl3qt::mutation::{is_laurent, FlipChain};
use sl3qt::qtorus::{render, render_monomial};
use sl3qt::surface::{flip, Triangulation};
use sl3qt::trace::{peripheral_highest_term, Turn};
use sl3qt::verify::criteria::PeripheralLoop;
use sl3qt::verify::fixtures;

fn main() -> sl3qt::Result<()> {
    let sq = Triangulation::parse(fixtures::PUNCTURED_SQUARE)?;
    let chain = FlipChain::new(flip(&sq, "s1")?)?;
    for turn in [Turn::Left, Turn::Right] {
        let before = PeripheralLoop::new(sq.clone(), turn)?;
        let v = before.value()?;
        let h = peripheral_highest_term(&v)?;
        println!("{turn}: {}", render(&before.seed, &v));
        println!("  highest {}", render_monomial(&before.seed, &h));
        let after = PeripheralLoop::new(chain.flip.after.clone(), turn)?;
        let h2 = peripheral_highest_term(&after.value()?)?;
        let image = is_laurent(&chain.theta(&h2.to_poly())?);
        println!("  flip of s1 keeps it: {}", image == Some(h.to_poly()));
    }
    Ok(())
}
