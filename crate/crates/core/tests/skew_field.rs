//! Field laws in the fraction field of a rank-3 quantum torus.

use proptest::prelude::*;
use sl3qt::mutation::ore::{OreCtx, Sf};

fn ctx() -> OreCtx {
    OreCtx::new(vec![vec![0, 2, -4], vec![-2, 0, 6], vec![4, -6, 0]])
}

/// Sum of `c t^k x_v^e` terms, optionally inverted.
fn build(terms: &[(i64, i64, usize, i64)], invert: bool) -> Sf {
    let c = ctx();
    let mut out = Sf::zero();
    for &(coef, k, v, e) in terms {
        out = out.add(&Sf::t_pow(coef, k).mul(&Sf::gen_pow(v, e), &c), &c);
    }
    if invert && !out.is_zero() {
        out.inv(&c)
    } else {
        out
    }
}

fn arb() -> impl Strategy<Value = Sf> {
    (prop::collection::vec((-3i64..=3, -4i64..=4, 0usize..3, -1i64..=2), 1..3), prop::bool::ANY)
        .prop_map(|(t, inv)| build(&t, inv))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multiplication_is_associative(a in arb(), b in arb(), d in arb()) {
        let c = ctx();
        prop_assert_eq!(a.mul(&b, &c).mul(&d, &c), a.mul(&b.mul(&d, &c), &c));
    }

    #[test]
    fn left_distributive(a in arb(), b in arb(), d in arb()) {
        let c = ctx();
        prop_assert_eq!(a.mul(&b.add(&d, &c), &c), a.mul(&b, &c).add(&a.mul(&d, &c), &c));
    }

    #[test]
    fn nonzero_elements_are_invertible(a in arb()) {
        let c = ctx();
        prop_assume!(!a.is_zero());
        prop_assert!(a.mul(&a.inv(&c), &c).is_one());
        prop_assert!(a.inv(&c).mul(&a, &c).is_one());
    }

    #[test]
    fn subtraction_cancels(a in arb(), b in arb()) {
        let c = ctx();
        prop_assert_eq!(a.add(&b, &c).sub(&b, &c), a);
    }
}

#[test]
fn generators_follow_the_commutation_matrix() {
    let c = ctx();
    let (x, y) = (Sf::gen(1), Sf::gen(2));
    assert_eq!(x.mul(&y, &c), y.mul(&x, &c).mul_t(6));
}
