//! Traces on both sides of a flip, the coordinate change between them, and
//! compatibility with cutting.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sl3qt::balance::random_balanced;
use sl3qt::mutation::{is_laurent, FlipChain};
use sl3qt::qtorus::{classicalize, is_multiplicity_free, render, star, ExponentVector, LaurentPoly};
use sl3qt::surface::{flip, Triangulation};
use sl3qt::trace::{StatePair, Turn};
use sl3qt::verify::criteria::{cutting_axiom, CutFlip, PeripheralLoop};
use sl3qt::verify::{fixtures, FlipSetup};

fn st(a: u8, b: u8) -> StatePair {
    StatePair::new(a, b).unwrap()
}

#[test]
fn single_turn_value_is_the_weyl_monomial_of_the_diagonal_product() {
    let s = FlipSetup::quadrilateral();
    let w = s.web("case1").unwrap();
    let v = s.before().edge_trace(&s.webs[w].0, st(1, 1)).unwrap();
    // Z6 Z5^2 Z7^2 Z1 Z2^2 in context labels
    let mut e = ExponentVector::zeros(s.seed().len());
    for (j, k) in [(6, 1), (5, 2), (7, 2), (1, 1), (2, 2)] {
        e.units_mut()[s.seed().idx(s.chain.flip.context.v(j)).unwrap()] = k;
    }
    assert_eq!(v, LaurentPoly::monomial(e));
    assert_eq!(render(s.seed(), &s.before().edge_trace(&s.webs[w].0, st(2, 1)).unwrap()), "0");
}

#[test]
fn flip_carries_every_trace_value_to_its_counterpart() {
    let s = FlipSetup::quadrilateral();
    for (p, q) in &s.webs {
        for state in StatePair::all() {
            let before = s.before().edge_trace(p, state).unwrap();
            let after = s.after().edge_trace(q, state).unwrap();
            let image = is_laurent(&s.chain.theta(&after).unwrap());
            assert_eq!(image.as_ref(), Some(&before), "{} {state}", p.id);
            let classical = s.chain.theta_classical(&classicalize(&after)).unwrap();
            assert_eq!(classical, Some(classicalize(&before)), "{} {state} at w=1", p.id);
        }
    }
}

#[test]
fn first_two_mutations_keep_values_laurent() {
    let s = FlipSetup::quadrilateral();
    for (p, _) in &s.webs {
        for state in StatePair::all() {
            let v = s.before().edge_trace(p, state).unwrap();
            let l = is_laurent(&s.chain.step_forward(&v).unwrap()).expect("Laurent");
            assert!(is_multiplicity_free(&l), "{} {state}", p.id);
        }
    }
}

#[test]
fn trace_values_are_star_invariant() {
    let s = FlipSetup::quadrilateral();
    for (p, _) in &s.webs {
        for state in StatePair::all() {
            let v = s.before().edge_trace(p, state).unwrap();
            assert_eq!(star(&v), v);
        }
    }
}

#[test]
fn mutation_exponents_stay_in_unit_range() {
    let s = FlipSetup::quadrilateral();
    for w in 0..s.webs.len() {
        for (name, e) in s.table_columns(w) {
            for a in s.chain.step_alphas(&e) {
                assert!(matches!(a.to_int(), Some(-1..=1)), "{} {name}: {a}", s.webs[w].0.id);
            }
        }
    }
}

#[test]
fn tables_match_golden_files() {
    let s = FlipSetup::quadrilateral();
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("golden");
    for w in 0..s.webs.len() {
        let name = format!("{}.txt", s.webs[w].0.id);
        let expected = std::fs::read_to_string(dir.join(&name)).unwrap();
        assert_eq!(s.golden_text(w), expected, "{name}");
    }
}

#[test]
fn flipping_twice_restores_the_quiver() {
    let tri = Triangulation::parse(fixtures::QUADRILATERAL).unwrap();
    let once = flip(&tri, "d").unwrap();
    let chain = FlipChain::new(once.clone()).unwrap();
    assert_eq!(chain.mutated.len(), 4);
    let back = flip(&once.after, "d").unwrap();
    FlipChain::new(back).unwrap();
    assert!(flip(&tri, "a").is_err(), "boundary arcs cannot flip");
}

#[test]
fn cutting_state_sum_holds_for_two_triangle_webs() {
    let s = FlipSetup::quadrilateral();
    for id in ["case3", "case4", "case5", "case6"] {
        let w = s.web(id).unwrap();
        for (state, ok) in cutting_axiom(&s, w, "d").unwrap() {
            assert!(ok, "{id} {state}");
        }
    }
    assert!(cutting_axiom(&s, s.web("case1").unwrap(), "d").is_err());
}

#[test]
fn cutting_commutes_with_the_flip_on_the_pentagon() {
    let pent = Triangulation::parse(fixtures::PENTAGON).unwrap();
    let cf = CutFlip::new(&pent, "f", "g").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let c = &cf.chain;
        let a = random_balanced(&c.flip.after, &c.after_labeling, c.after_seed.len(), 1, &mut rng);
        assert!(cf.check(&LaurentPoly::monomial(a)).unwrap());
    }
}

#[test]
fn peripheral_loop_has_three_positive_terms() {
    let sq = Triangulation::parse(fixtures::PUNCTURED_SQUARE).unwrap();
    for turn in [Turn::Left, Turn::Right] {
        let v = PeripheralLoop::new(sq.clone(), turn).unwrap().value().unwrap();
        assert_eq!(v.len(), 3);
        assert!(v.monomials().iter().all(|m| m.sign == 1 && m.omega.doubled == 0));
    }
}
