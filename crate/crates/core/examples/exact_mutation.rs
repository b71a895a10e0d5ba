//! Mutation maps in the skew field of fractions: a balanced monomial, mutated
//! at one node and back. Scalars print as values at the evaluation point of `t`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sl3qt::balance::random_balanced;
use sl3qt::mutation::exact::{nu, Element};
use sl3qt::qtorus::LaurentPoly;
use sl3qt::verify::FlipSetup;

fn main() -> sl3qt::Result<()> {
    let s = FlipSetup::quadrilateral();
    let c = &s.chain;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = random_balanced(&c.flip.before, &c.labeling, c.seeds[0].len(), 1, &mut rng);
    let (t0, t1) = (c.torus(0), c.torus(1));
    let u = c.mutated[0];
    let x = Element::from_laurent(&t0, &LaurentPoly::monomial(a));
    let y = nu(&c.seeds[1], u, &x, &t0, &t1)?;
    println!("x        = {}", x.render(&t0));
    println!("nu(x)    = {}", y.render(&t1));
    let back = nu(&c.seeds[0], u, &y, &t1, &t0)?;
    println!("back = x: {}", back.equals(&x, &t0));
    Ok(())
}
