//! Monomial products against brute-force normal ordering, plus ring laws.

use proptest::prelude::*;
use sl3qt::coeff::HalfInt;
use sl3qt::qtorus::{mono_mul, poly_add, poly_mul, ExponentVector, LaurentPoly, WeylMonomial};
use sl3qt::quiver::Seed;
use sl3qt::verify::criteria::brute_force_product;

fn seed_from(n: usize, entries: &[i64]) -> Seed {
    let nodes = (1..=n).map(|i| i.to_string()).collect();
    let mut s = Seed::new(nodes, vec![false; n]).unwrap();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            s.set_eps(i, j, HalfInt::from_doubled(entries[k]));
            k += 1;
        }
    }
    s
}

fn arb_seed() -> impl Strategy<Value = Seed> {
    (2usize..=6).prop_flat_map(|n| {
        prop::collection::vec(-2i64..=2, n * (n - 1) / 2).prop_map(move |e| seed_from(n, &e))
    })
}

fn arb_mono(n: usize) -> impl Strategy<Value = WeylMonomial> {
    (prop::collection::vec(-4i64..=4, n), -6i64..=6, prop::bool::ANY).prop_map(|(u, w, neg)| WeylMonomial {
        sign: if neg { -1 } else { 1 },
        omega: HalfInt::from_doubled(w),
        exps: ExponentVector::from_units(u),
    })
}

fn with_monos(k: usize) -> impl Strategy<Value = (Seed, Vec<WeylMonomial>)> {
    arb_seed().prop_flat_map(move |s| {
        let n = s.len();
        (Just(s), prop::collection::vec(arb_mono(n), k))
    })
}

proptest! {
    #[test]
    fn product_matches_bubble_sort((seed, m) in with_monos(2)) {
        prop_assert_eq!(mono_mul(&seed, &m[0], &m[1]), brute_force_product(&seed, &m[0], &m[1]));
    }

    #[test]
    fn product_is_associative((seed, m) in with_monos(3)) {
        let l = mono_mul(&seed, &mono_mul(&seed, &m[0], &m[1]), &m[2]);
        let r = mono_mul(&seed, &m[0], &mono_mul(&seed, &m[1], &m[2]));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn inverse_monomial_cancels((seed, m) in with_monos(1)) {
        let inv = WeylMonomial { sign: m[0].sign, omega: HalfInt::from_doubled(-m[0].omega.doubled), exps: -&m[0].exps };
        prop_assert_eq!(mono_mul(&seed, &m[0], &inv), WeylMonomial { sign: 1, ..WeylMonomial::one(seed.len()) });
    }

    #[test]
    fn multiplication_distributes((seed, m) in with_monos(3)) {
        let p: Vec<LaurentPoly> = m.iter().map(WeylMonomial::to_poly).collect();
        let l = poly_mul(&seed, &p[0], &poly_add(&p[1], &p[2]));
        let r = poly_add(&poly_mul(&seed, &p[0], &p[1]), &poly_mul(&seed, &p[0], &p[2]));
        prop_assert_eq!(l, r);
    }
}

#[test]
fn generators_quasi_commute() {
    // Z_1 Z_2 = w^{2ε} Z_2 Z_1 with ε = 1
    let seed = Seed::parse("node 1\nnode 2\neps 1 2 1\n").unwrap();
    let z1 = WeylMonomial::new(ExponentVector::from_units(vec![1, 0]));
    let z2 = WeylMonomial::new(ExponentVector::from_units(vec![0, 1]));
    let a = mono_mul(&seed, &z1, &z2);
    let b = mono_mul(&seed, &z2, &z1);
    assert_eq!(a.exps, b.exps);
    assert_eq!(a.omega.doubled - b.omega.doubled, 4);
}
