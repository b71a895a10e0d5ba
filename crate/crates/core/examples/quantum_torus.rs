//! Weyl-ordered monomials of a balanced cube-root quantum torus and their products.

use sl3qt::qtorus::{mono_mul, poly_add, poly_mul, render, ExponentVector, WeylMonomial};
use sl3qt::quiver::Seed;

fn main() -> sl3qt::Result<()> {
    let seed = Seed::parse("node 1\nnode 2\nnode 3\neps 1 2 1\neps 2 3 -1\neps 1 3 2\n")?;
    // [Z_1 Z_2^2] and [Z_2^{-1} Z_3]
    let a = WeylMonomial::new(ExponentVector::from_units(vec![1, 2, 0]));
    let b = WeylMonomial::new(ExponentVector::from_units(vec![0, -1, 1]));
    println!("a b = {}", render(&seed, &mono_mul(&seed, &a, &b).to_poly()));
    println!("b a = {}", render(&seed, &mono_mul(&seed, &b, &a).to_poly()));
    let sum = poly_add(&a.to_poly(), &b.to_poly());
    println!("(a + b)^2 = {}", render(&seed, &poly_mul(&seed, &sum, &sum)));
    Ok(())
}
