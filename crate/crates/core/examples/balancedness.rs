//! Balanced exponent vectors and the integrality of mutation exponents.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sl3qt::balance::{is_delta_balanced, random_balanced};
use sl3qt::qtorus::ExponentVector;
use sl3qt::verify::FlipSetup;

fn main() {
    let s = FlipSetup::quadrilateral();
    let c = &s.chain;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..3 {
        let a = random_balanced(&c.flip.after, &c.after_labeling, c.after_seed.len(), 2, &mut rng);
        let alphas = c.alphas(&a);
        println!("alphas {:?}", alphas.map(|x| x.to_string()));
    }
    let mut bad = ExponentVector::zeros(c.seeds[0].len());
    bad.units_mut()[0] = 1;
    let rep = is_delta_balanced(&c.flip.before, &c.labeling, &bad);
    println!("single unit balanced: {} ({} failures)", rep.balanced, rep.failures.len());
}
