//! Quiver mutation, quantum mutation maps and their relations.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sl3qt::balance::{random_balanced, transform_exponents};
use sl3qt::coeff::HalfInt;
use sl3qt::mutation::exact::{check_relation, nu, Element, Step};
use sl3qt::mutation::{is_laurent, mu_q, normalize, nu_omega, QuantumRational};
use sl3qt::qtorus::{ExponentVector, LaurentPoly};
use sl3qt::quiver::{mutate_quiver, mutate_quiver_at, seeds_equal, Seed};
use sl3qt::verify::{fixtures, FlipSetup};
use sl3qt::Error;

fn seed_from(n: usize, entries: &[i64]) -> Seed {
    let nodes = (1..=n).map(|i| i.to_string()).collect();
    let mut s = Seed::new(nodes, vec![false; n]).unwrap();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            s.set_eps(i, j, HalfInt::from_doubled(2 * entries[k]));
            k += 1;
        }
    }
    s
}

fn arb_seed() -> impl Strategy<Value = Seed> {
    (2usize..=7).prop_flat_map(|n| prop::collection::vec(-2i64..=2, n * (n - 1) / 2).prop_map(move |e| seed_from(n, &e)))
}

/// Exchange-matrix mutation written entrywise on doubled entries.
fn oracle(seed: &Seed, k: usize) -> Vec<Vec<i64>> {
    let n = seed.len();
    let e = |i, j| seed.eps2(i, j);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == k || j == k {
                        -e(i, j)
                    } else if e(i, k) > 0 && e(k, j) > 0 {
                        e(i, j) + e(i, k) * e(k, j) / 2
                    } else if e(i, k) < 0 && e(k, j) < 0 {
                        e(i, j) - e(i, k) * e(k, j) / 2
                    } else {
                        e(i, j)
                    }
                })
                .collect()
        })
        .collect()
}

proptest! {
    #[test]
    fn quiver_mutation_is_an_involution(seed in arb_seed(), k in 0usize..7) {
        let k = k % seed.len();
        let twice = mutate_quiver(&mutate_quiver(&seed, k).unwrap(), k).unwrap();
        prop_assert!(seeds_equal(&twice, &seed));
    }

    #[test]
    fn quiver_mutation_matches_entrywise_rule(seed in arb_seed(), k in 0usize..7) {
        let k = k % seed.len();
        let m = mutate_quiver(&seed, k).unwrap();
        let got: Vec<Vec<i64>> = (0..seed.len()).map(|i| (0..seed.len()).map(|j| m.eps2(i, j)).collect()).collect();
        prop_assert_eq!(got, oracle(&seed, k));
    }
}

#[test]
fn face_node_mutation_of_triangle_quiver_matches_rule() {
    let seed = sl3qt::cli::load_seed(fixtures::TRIANGLE).unwrap();
    let k = seed.idx("t:t").unwrap();
    let m = mutate_quiver(&seed, k).unwrap();
    for i in 0..seed.len() {
        for j in 0..seed.len() {
            assert_eq!(m.eps2(i, j), oracle(&seed, k)[i][j], "{} {}", seed.node(i), seed.node(j));
        }
    }
}

#[test]
fn frozen_node_cannot_mutate() {
    let seed = sl3qt::cli::load_seed(fixtures::TRIANGLE).unwrap();
    assert_eq!(mutate_quiver_at(&seed, "a:1").unwrap_err(), Error::FrozenNode("a:1".into()));
}

fn two(e: &str) -> Seed {
    Seed::parse(&format!("node 1\nnode 2\neps 1 2 {e}\n")).unwrap()
}

#[test]
fn involution_square_and_pentagon_hold() {
    assert!(check_relation(&two("1"), &[Step::Mutate(1), Step::Mutate(1)]).unwrap());
    assert!(check_relation(&two("0"), &[0, 1, 0, 1].map(Step::Mutate)).unwrap());
    for e in ["1", "-1"] {
        let mut w = [0, 1, 0, 1, 0].map(Step::Mutate).to_vec();
        w.push(Step::Permute(vec![1, 0]));
        assert!(check_relation(&two(e), &w).unwrap(), "eps {e}");
    }
}

#[test]
fn wrong_relations_are_rejected() {
    assert!(!check_relation(&two("1"), &[0, 1, 0, 1].map(Step::Mutate)).unwrap());
    assert!(!check_relation(&two("1"), &[Step::Mutate(0)]).unwrap());
}

#[test]
fn pentagon_holds_inside_a_larger_seed() {
    let s = Seed::parse("node 1\nnode 2\nnode 3\neps 1 2 1\neps 2 3 -1\neps 1 3 2\n").unwrap();
    let mut w = [0, 1, 0, 1, 0].map(Step::Mutate).to_vec();
    w.push(Step::Permute(vec![1, 0, 2]));
    assert!(check_relation(&s, &w).unwrap());
}

#[test]
fn quantum_mutation_of_a_generator() {
    // positive entry: polynomial image; negative entry: one binomial denominator
    let x2 = LaurentPoly::monomial(ExponentVector::x_power(2, 1, 1));
    let s = two("1");
    assert_eq!(mu_q(&s, 0, &x2).unwrap().render(&s), "+w^{0} X2^{1} +w^{0} X1^{1} X2^{1}");
    let s = two("-1");
    assert_eq!(mu_q(&s, 0, &x2).unwrap().render(&s), "(+w^{0} X1^{1} X2^{1})·((1+q^{-1}X1))^-1");
}

#[test]
fn non_integral_exponent_rejected_by_mu_q() {
    let s = two("1");
    let z = LaurentPoly::monomial(ExponentVector::from_units(vec![1, 0]));
    assert!(matches!(mu_q(&s, 0, &z), Err(Error::NonIntegral(_))));
}

#[test]
fn balanced_mutation_twice_is_identity_on_both_paths() {
    let s = FlipSetup::quadrilateral();
    let c = &s.chain;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let mut a = random_balanced(&c.flip.before, &c.labeling, c.seeds[0].len(), 1, &mut rng);
        for r in 0..4 {
            let u = c.mutated[r];
            let p = LaurentPoly::monomial(a.clone());
            let y = nu_omega(&c.seeds[r + 1], u, &QuantumRational::from_laurent(p.clone())).unwrap();
            let z = normalize(&c.seeds[r], &nu_omega(&c.seeds[r], u, &y).unwrap());
            assert_eq!(is_laurent(&z), Some(p.clone()));
            let (t0, t1) = (c.torus(r), c.torus(r + 1));
            let x = Element::from_laurent(&t0, &p);
            let back = nu(&c.seeds[r], u, &nu(&c.seeds[r + 1], u, &x, &t0, &t1).unwrap(), &t1, &t0).unwrap();
            assert!(back.equals(&x, &t0));
            a = transform_exponents(&c.seeds[r + 1], u, &a);
        }
    }
}

#[test]
fn unbalanced_monomial_is_reported() {
    let s = FlipSetup::quadrilateral();
    let c = &s.chain;
    let u = c.mutated[0];
    let v = (0..c.seeds[0].len()).find(|&v| c.seeds[0].eps2(u, v) != 0).unwrap();
    let mut e = ExponentVector::zeros(c.seeds[0].len());
    e.units_mut()[v] = 1;
    let err = nu_omega(&c.seeds[0], u, &QuantumRational::from_laurent(LaurentPoly::monomial(e)));
    assert!(matches!(err, Err(Error::Unbalanced { .. })));
}
