//! Cutting along an arc commutes with a flip elsewhere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sl3qt::balance::random_balanced;
use sl3qt::qtorus::LaurentPoly;
use sl3qt::surface::Triangulation;
use sl3qt::verify::criteria::{cutting_axiom, CutFlip};
use sl3qt::verify::{fixtures, FlipSetup};

fn main() -> sl3qt::Result<()> {
    let pent = Triangulation::parse(fixtures::PENTAGON)?;
    let cf = CutFlip::new(&pent, "f", "g")?;
    let c = &cf.chain;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..5 {
        let a = random_balanced(&c.flip.after, &c.after_labeling, c.after_seed.len(), 1, &mut rng);
        println!("pentagon sample {i}: {}", cf.check(&LaurentPoly::monomial(a))?);
    }
    let s = FlipSetup::quadrilateral();
    for (st, ok) in cutting_axiom(&s, s.web("case4")?, "d")? {
        println!("case4 {st} state sum: {ok}");
    }
    Ok(())
}
