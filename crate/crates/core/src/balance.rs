//! Balancedness conditions and the exponent action of a balanced mutation.

use std::fmt;

use rand::Rng;

use crate::coeff::ThirdInt;
use crate::qtorus::ExponentVector;
use crate::quiver::Seed;
use crate::surface::{QuiverLabeling, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// Sum of the three clockwise-first (or -second) side exponents.
    Be1,
    /// Sum of the two exponents on one arc.
    Be2,
    /// `-a_t + a_{e_k,2} + a_{e_{k+1},1}`.
    Be3,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Be1 => "BE1",
            Condition::Be2 => "BE2",
            Condition::Be3 => "BE3",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub triangle: String,
    pub condition: Condition,
    /// Arc(s) involved.
    pub at: String,
    pub value: ThirdInt,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BalanceReport {
    pub balanced: bool,
    pub failures: Vec<Failure>,
}

impl fmt::Display for BalanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.balanced {
            return f.write_str("balanced");
        }
        for x in &self.failures {
            writeln!(f, "{} {} at {}: {}", x.triangle, x.condition, x.at, x.value)?;
        }
        Ok(())
    }
}

pub fn is_delta_balanced(tri: &Triangulation, lab: &QuiverLabeling, a: &ExponentVector) -> BalanceReport {
    let mut failures = Vec::new();
    for (ti, t) in tri.triangles().iter().enumerate() {
        let sides: Vec<(usize, usize)> = (0..3).map(|p| lab.side(tri, ti, p)).collect();
        let mut check = |cond, at: String, units: i64| {
            if units % 3 != 0 {
                failures.push(Failure {
                    triangle: t.id.clone(),
                    condition: cond,
                    at,
                    value: ThirdInt::from_tripled(units),
                });
            }
        };
        let all = t.sides.join(",");
        check(Condition::Be1, all.clone(), sides.iter().map(|s| a.unit(s.0)).sum());
        check(Condition::Be1, all, sides.iter().map(|s| a.unit(s.1)).sum());
        for (p, s) in sides.iter().enumerate() {
            check(Condition::Be2, t.sides[p].clone(), a.unit(s.0) + a.unit(s.1));
        }
        let f = lab.face_node(&t.id);
        for p in 0..3 {
            let q = (p + 1) % 3;
            check(
                Condition::Be3,
                format!("{},{}", t.sides[p], t.sides[q]),
                -a.unit(f) + a.unit(sides[p].1) + a.unit(sides[q].0),
            );
        }
    }
    BalanceReport { balanced: failures.is_empty(), failures }
}

/// `sum_v ε_uv a_v` is an integer.
pub fn is_u_balanced(seed: &Seed, u: usize, a: &ExponentVector) -> bool {
    let s: i64 = (0..seed.len()).map(|v| seed.eps2(u, v) * a.unit(v)).sum();
    s % 6 == 0
}

/// `a_u -> -a_u + sum_w [ε_wu]_+ a_w`, using the pre-mutation `ε`.
pub fn transform_exponents(pre_seed: &Seed, u: usize, a: &ExponentVector) -> ExponentVector {
    let mut out = a.clone();
    let mut s = -a.unit(u);
    for w in 0..pre_seed.len() {
        let e = pre_seed.eps2(w, u);
        if e > 0 {
            debug_assert!(e % 2 == 0);
            s += (e / 2) * a.unit(w);
        }
    }
    out.units_mut()[u] = s;
    out
}

/// A uniformly chosen balanced residue pattern plus integer parts in `[-span, span]`.
///
/// Within a triangle, BE2 forces `a_{e,2} = -a_{e,1}` mod 1, and BE3 forces the
/// clockwise-first residues to be an arithmetic progression whose step is the
/// face residue.
pub fn random_balanced<R: Rng>(
    tri: &Triangulation,
    lab: &QuiverLabeling,
    n: usize,
    span: i64,
    rng: &mut R,
) -> ExponentVector {
    loop {
        let res: Vec<i64> = tri.arcs().iter().map(|_| rng.gen_range(0..3)).collect();
        let arc_pos = |id: &str| tri.arcs().iter().position(|a| a.id == id).unwrap();
        let mut ok = true;
        let mut face = Vec::new();
        for (ti, t) in tri.triangles().iter().enumerate() {
            let y: Vec<i64> = t
                .sides
                .iter()
                .map(|s| {
                    let r = res[arc_pos(s)];
                    if tri.arc(s).unwrap().oriented_by == ti {
                        r
                    } else {
                        (3 - r) % 3
                    }
                })
                .collect();
            let d = (y[1] - y[0]).rem_euclid(3);
            if (y[2] - y[1]).rem_euclid(3) != d {
                ok = false;
                break;
            }
            face.push((t.id.clone(), d));
        }
        if !ok {
            continue;
        }
        let mut units: Vec<i64> = (0..n).map(|_| 3 * rng.gen_range(-span..=span)).collect();
        for (i, arc) in tri.arcs().iter().enumerate() {
            let [x1, x2] = lab.edge[&arc.id];
            units[x1] += res[i];
            units[x2] -= res[i];
        }
        for (t, d) in face {
            units[lab.face_node(&t)] += d;
        }
        return ExponentVector::from_units(units);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::build_3triangulation_quiver;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const QUAD: &str = "triangle L d a b\ntriangle R d c e\nboundary a b c e\n";

    #[test]
    fn integral_is_balanced() {
        let t = Triangulation::parse(QUAD).unwrap();
        let (s, lab) = build_3triangulation_quiver(&t);
        let a = ExponentVector::from_units((0..s.len() as i64).map(|i| 3 * (i - 4)).collect());
        assert!(is_delta_balanced(&t, &lab, &a).balanced);
    }

    #[test]
    fn single_third_breaks_be2() {
        let t = Triangulation::parse(QUAD).unwrap();
        let (s, lab) = build_3triangulation_quiver(&t);
        let mut a = ExponentVector::zeros(s.len());
        a.units_mut()[s.idx("a:1").unwrap()] = 1;
        let r = is_delta_balanced(&t, &lab, &a);
        assert!(!r.balanced);
        assert!(r.failures.iter().any(|f| f.condition == Condition::Be2 && f.at == "a"));
    }

    #[test]
    fn sampler_yields_balanced() {
        let t = Triangulation::parse(QUAD).unwrap();
        let (s, lab) = build_3triangulation_quiver(&t);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut fractional = 0;
        for _ in 0..200 {
            let a = random_balanced(&t, &lab, s.len(), 2, &mut rng);
            assert!(is_delta_balanced(&t, &lab, &a).balanced);
            fractional += usize::from(!a.all_integral());
        }
        assert!(fractional > 100);
    }
}
