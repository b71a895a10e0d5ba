//! The cube-root quantum torus over a seed.
//!
//! Exponents are dense vectors in integer `Z`-units (`X = Z^3`), indexed by the
//! seed's node order. `[Z^a][Z^b] = w^{<a,b>}[Z^{a+b}]` with
//! `<a,b> = sum ε_vw a_v b_w`.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::coeff::{coeff_star, render_signed_power, HalfInt, OmegaPoly, ThirdInt};
use crate::quiver::Seed;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// From `Z`-unit entries.
    pub fn from_units(units: Vec<i64>) -> Self {
        ExponentVector(units)
    }

    pub fn from_thirds(a: &[ThirdInt]) -> Self {
        ExponentVector(a.iter().map(|t| t.tripled).collect())
    }

    /// `X_v^k` as a `Z`-unit vector.
    pub fn x_power(n: usize, v: usize, k: i64) -> Self {
        let mut e = ExponentVector::zeros(n);
        e.0[v] = 3 * k;
        e
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn units(&self) -> &[i64] {
        &self.0
    }

    pub fn units_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }

    #[inline]
    pub fn unit(&self, i: usize) -> i64 {
        self.0[i]
    }

    /// Exponent of `X_i`.
    pub fn third(&self, i: usize) -> ThirdInt {
        ThirdInt::from_tripled(self.0[i])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise `>=`.
    pub fn dominates(&self, o: &ExponentVector) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a >= b)
    }

    pub fn all_integral(&self) -> bool {
        self.0.iter().all(|x| x % 3 == 0)
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;
    fn add(self, o: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ExponentVector {
    type Output = ExponentVector;
    fn sub(self, o: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ExponentVector {
    type Output = ExponentVector;
    fn neg(self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }
}

/// `2<a,b>`, in `Z`-units.
pub fn pairing2(seed: &Seed, a: &ExponentVector, b: &ExponentVector) -> i64 {
    let n = seed.len();
    let mut s = 0;
    for v in 0..n {
        let av = a.unit(v);
        if av == 0 {
            continue;
        }
        for w in 0..n {
            let bw = b.unit(w);
            if bw != 0 {
                s += seed.eps2(v, w) * av * bw;
            }
        }
    }
    s
}

/// `α = sum_v ε_uv a_v` for `a` in `X`-units.
///
/// The row of `u` must be integral, which holds for every mutable node.
pub fn commutation_exponent(seed: &Seed, u: usize, a: &ExponentVector) -> ThirdInt {
    let s: i64 = (0..seed.len()).map(|v| seed.eps2(u, v) * a.unit(v)).sum();
    assert!(s % 2 == 0, "half-integral row at `{}`", seed.node(u));
    ThirdInt::from_tripled(s / 2)
}

/// `sign · w^{omega} · [Z^exps]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylMonomial {
    pub sign: i64,
    pub omega: HalfInt,
    pub exps: ExponentVector,
}

impl WeylMonomial {
    pub fn new(exps: ExponentVector) -> Self {
        WeylMonomial { sign: 1, omega: HalfInt::ZERO, exps }
    }

    pub fn one(n: usize) -> Self {
        WeylMonomial::new(ExponentVector::zeros(n))
    }

    pub fn coefficient(&self) -> OmegaPoly {
        OmegaPoly::monomial(self.sign, self.omega)
    }

    pub fn to_poly(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        p.add_term(self.exps.clone(), &self.coefficient());
        p
    }
}

pub fn mono_mul(seed: &Seed, m1: &WeylMonomial, m2: &WeylMonomial) -> WeylMonomial {
    WeylMonomial {
        sign: m1.sign * m2.sign,
        omega: HalfInt::from_doubled(m1.omega.doubled + m2.omega.doubled + pairing2(seed, &m1.exps, &m2.exps)),
        exps: &m1.exps + &m2.exps,
    }
}

/// Sum of `coefficient · [Z^a]` over distinct `a`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<ExponentVector, OmegaPoly>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one(n: usize) -> Self {
        WeylMonomial::one(n).to_poly()
    }

    pub fn monomial(exps: ExponentVector) -> Self {
        WeylMonomial::new(exps).to_poly()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &OmegaPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Option<&OmegaPoly> {
        self.terms.get(e)
    }

    pub fn add_term(&mut self, e: ExponentVector, c: &OmegaPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add_monomial(&mut self, m: &WeylMonomial) {
        let mut c = OmegaPoly::zero();
        c.add_term(m.sign, m.omega);
        self.add_term(m.exps.clone(), &c);
    }

    /// Terms with single-term coefficients, as Weyl monomials.
    pub fn monomials(&self) -> Vec<WeylMonomial> {
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            for (w, k) in c.terms() {
                for _ in 0..k.abs() {
                    out.push(WeylMonomial { sign: k.signum(), omega: w, exps: e.clone() });
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &OmegaPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, d) in &self.terms {
            out.add_term(e.clone(), &(c * d));
        }
        out
    }

    /// Relabels exponent vectors: new entry `j` is old entry `src[j]`.
    pub fn reindex(&self, n_new: usize, map_old_to_new: &[usize]) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            let mut f = vec![0; n_new];
            for (i, &j) in map_old_to_new.iter().enumerate() {
                f[j] = e.unit(i);
            }
            out.add_term(ExponentVector::from_units(f), c);
        }
        out
    }
}

pub fn poly_add(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    let mut out = p.clone();
    for (e, c) in q.terms() {
        out.add_term(e.clone(), c);
    }
    out
}

pub fn poly_sub(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    let mut out = p.clone();
    for (e, c) in q.terms() {
        out.add_term(e.clone(), &-c);
    }
    out
}

pub fn poly_mul(seed: &Seed, p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (a, c) in p.terms() {
        for (b, d) in q.terms() {
            let ph = pairing2(seed, a, b);
            out.add_term(a + b, &(c * d).shift(ph));
        }
    }
    out
}

/// Weyl monomials are `*`-fixed, so `*` conjugates coefficients only.
pub fn star(p: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (e, c) in p.terms() {
        out.add_term(e.clone(), &coeff_star(c));
    }
    out
}

/// Commutative Laurent polynomial with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClassicalPoly {
    terms: BTreeMap<ExponentVector, i64>,
}

impl ClassicalPoly {
    pub fn zero() -> Self {
        ClassicalPoly::default()
    }

    pub fn monomial(c: i64, e: ExponentVector) -> Self {
        let mut p = ClassicalPoly::zero();
        p.add_term(e, c);
        p
    }

    pub fn add_term(&mut self, e: ExponentVector, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, i64)> {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &ClassicalPoly) -> ClassicalPoly {
        let mut out = self.clone();
        for (e, c) in o.terms() {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn mul(&self, o: &ClassicalPoly) -> ClassicalPoly {
        let mut out = ClassicalPoly::zero();
        for (a, c) in self.terms() {
            for (b, d) in o.terms() {
                out.add_term(a + b, c * d);
            }
        }
        out
    }
}

/// Evaluate every coefficient at `w^{1/2} = 1`.
pub fn classicalize(p: &LaurentPoly) -> ClassicalPoly {
    let mut out = ClassicalPoly::zero();
    for (e, c) in p.terms() {
        out.add_term(e.clone(), c.eval_at_one());
    }
    out
}

/// Each classical monomial becomes its Weyl-ordered counterpart.
pub fn weyl_quantize(f: &ClassicalPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (e, c) in f.terms() {
        out.add_term(e.clone(), &OmegaPoly::constant(c));
    }
    out
}

pub fn is_multiplicity_free(p: &LaurentPoly) -> bool {
    p.terms().all(|(_, c)| c.as_signed_unit().is_some())
}

/// The term dominating every other componentwise, when it is a Weyl monomial.
pub fn highest_term(p: &LaurentPoly) -> Option<WeylMonomial> {
    let (top, c) = p.terms().find(|(e, _)| p.terms().all(|(f, _)| e.dominates(f)))?;
    let (sign, omega) = c.as_signed_unit()?;
    Some(WeylMonomial { sign, omega, exps: top.clone() })
}

fn render_exponents(seed: &Seed, e: &ExponentVector, latex: bool) -> String {
    let mut parts = Vec::new();
    for i in 0..e.len() {
        let a = e.third(i);
        if a.tripled == 0 {
            continue;
        }
        if latex {
            parts.push(format!("X_{{{}}}^{{{}}}", seed.node(i), a));
        } else {
            parts.push(format!("X{}^{{{}}}", seed.node(i), a));
        }
    }
    parts.join(" ")
}

/// Canonical form: terms in lexicographic exponent order, each as
/// `±w^{m} X<v>^{a}` with zero exponents omitted.
pub fn render(seed: &Seed, p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = Vec::new();
    for (e, c) in p.terms() {
        let coeff = match c.as_signed_unit() {
            Some((s, m)) => render_signed_power(s, m),
            None => format!("+[{}]", c.render()),
        };
        let mono = render_exponents(seed, e, false);
        if mono.is_empty() {
            out.push(coeff);
        } else {
            out.push(format!("{coeff} {mono}"));
        }
    }
    out.join(" ")
}

/// `\omega^{m}[X_{v}^{a} ...]_{\rm Weyl}` per term.
pub fn render_latex(seed: &Seed, p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().enumerate() {
        let coeff = c.render_latex();
        let coeff = if i > 0 && !coeff.starts_with('-') { format!("+{coeff}") } else { coeff };
        let coeff = match coeff.as_str() {
            "1" => String::new(),
            "+1" => "+".to_string(),
            "-1" => "-".to_string(),
            _ if c.len() > 1 => format!("({coeff})"),
            _ => coeff,
        };
        out.push_str(&format!("{coeff}[{}]_{{\\rm Weyl}}", render_exponents(seed, e, true)));
    }
    out
}

/// Value at `w = 1`: `±c X<v>^{a}` per term, or the LaTeX-like analogue.
pub fn render_classical(seed: &Seed, f: &ClassicalPoly, latex: bool) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = Vec::new();
    for (e, c) in f.terms() {
        let sign = if c < 0 { '-' } else { '+' };
        let mono = render_exponents(seed, e, latex);
        out.push(match (c.abs(), mono.is_empty()) {
            (m, true) => format!("{sign}{m}"),
            (1, false) => format!("{sign}{mono}"),
            (m, false) => format!("{sign}{m} {mono}"),
        });
    }
    out.join(" ")
}

pub fn render_monomial(seed: &Seed, m: &WeylMonomial) -> String {
    render(seed, &m.to_poly())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed2() -> Seed {
        Seed::parse("node 1\nnode 2\neps 1 2 1\n").unwrap()
    }

    fn z(a: i64, b: i64) -> WeylMonomial {
        WeylMonomial::new(ExponentVector::from_units(vec![a, b]))
    }

    #[test]
    fn inverse_cancels_phase() {
        let s = seed2();
        let m = WeylMonomial { sign: -1, omega: HalfInt::from_doubled(3), exps: ExponentVector::from_units(vec![2, -5]) };
        let inv = WeylMonomial { sign: -1, omega: HalfInt::from_doubled(-3), exps: ExponentVector::from_units(vec![-2, 5]) };
        assert_eq!(mono_mul(&s, &m, &inv), WeylMonomial::one(2));
    }

    #[test]
    fn z1_z2_gains_omega() {
        let p = mono_mul(&seed2(), &z(1, 0), &z(0, 1));
        assert_eq!(p.omega, HalfInt::from_int(1));
        assert_eq!(p.exps.units(), &[1, 1]);
    }

    #[test]
    fn multiplicity_free_and_highest() {
        let s = seed2();
        let p = poly_add(&z(3, 0).to_poly(), &z(0, 3).to_poly());
        assert!(is_multiplicity_free(&p));
        assert!(highest_term(&p).is_none());
        let qq = &OmegaPoly::q_pow(1) + &OmegaPoly::q_pow(-1);
        assert!(!is_multiplicity_free(&z(1, 1).to_poly().scale(&qq)));
        let single = z(2, -1);
        assert_eq!(highest_term(&single.to_poly()), Some(single));
        let _ = s;
    }

    #[test]
    fn rendering() {
        let s = seed2();
        let p = poly_add(&z(2, 1).to_poly(), &z(0, 0).to_poly().scale(&OmegaPoly::constant(-1)));
        assert_eq!(render(&s, &p), "-w^{0} +w^{0} X1^{2/3} X2^{1/3}");
        assert_eq!(render(&s, &LaurentPoly::zero()), "0");
    }
}
