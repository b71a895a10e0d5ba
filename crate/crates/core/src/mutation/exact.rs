//! Elements of the fraction field, localized only at a set of core nodes.
//! Scalars live in [`super::ore::Fp`], so `t` is evaluated at a fixed point.
//!
//! An element is `sum w^{j/2} [Z^ρ] f` with `j ∈ {0,1,2}`, `ρ` reduced mod 3 at
//! core nodes, and `f` in the skew field of the core `X`-torus. Every mutation
//! in a flip happens at a core node, so this ring is closed under the maps.

use std::collections::BTreeMap;

use crate::balance::transform_exponents;
use crate::coeff::{HalfInt, OmegaPoly};
use crate::error::{Error, Result};
use crate::mutation::ore::{OreCtx, Sf};
use crate::qtorus::{commutation_exponent, pairing2, ExponentVector, LaurentPoly};
use crate::quiver::Seed;

/// Product structure of the ambient torus and the chosen core.
#[derive(Clone, Debug)]
pub struct Torus {
    seed: Seed,
    core: Vec<usize>,
    var_of: Vec<Option<usize>>,
    ctx: OreCtx,
    classical: bool,
}

impl Torus {
    /// Quantum torus of `seed`, localized at `core`.
    pub fn new(seed: &Seed, core: Vec<usize>) -> Self {
        Torus::build(seed.clone(), core, false)
    }

    /// Commutative torus on the same nodes, `w = 1`.
    pub fn classical(seed: &Seed, core: Vec<usize>) -> Self {
        let mut flat = Seed::new(seed.nodes().to_vec(), (0..seed.len()).map(|i| seed.is_frozen(i)).collect())
            .expect("nodes already unique");
        for i in 0..seed.len() {
            for j in 0..seed.len() {
                flat.set_eps(i, j, HalfInt::ZERO);
            }
        }
        Torus::build(flat, core, true)
    }

    /// Core given by node ids.
    pub fn with_core_ids(seed: &Seed, core: &[&str], classical: bool) -> Result<Self> {
        let idx = core.iter().map(|v| seed.idx(v)).collect::<Result<Vec<_>>>()?;
        Ok(if classical { Torus::classical(seed, idx) } else { Torus::new(seed, idx) })
    }

    fn build(seed: Seed, core: Vec<usize>, classical: bool) -> Self {
        let mut var_of = vec![None; seed.len()];
        for (a, &c) in core.iter().enumerate() {
            var_of[c] = Some(a);
        }
        // x_a x_b = q^{2ε} x_b x_a = t^{12ε}
        let comm = core.iter().map(|&a| core.iter().map(|&b| 6 * seed.eps2(a, b)).collect()).collect();
        Torus { seed, core, var_of, ctx: OreCtx::new(comm), classical }
    }

    pub fn seed(&self) -> &Seed {
        &self.seed
    }

    pub fn core(&self) -> &[usize] {
        &self.core
    }

    pub fn ctx(&self) -> &OreCtx {
        &self.ctx
    }

    pub fn is_classical(&self) -> bool {
        self.classical
    }

    /// `q^k` as a scalar.
    fn q_pow(&self, k: i64) -> Sf {
        if self.classical {
            Sf::one()
        } else {
            Sf::t_pow(1, 6 * k)
        }
    }

    /// `[Z^β] = w^{h/2} [Z^ρ] x^γ`; returns `(ρ, h, γ)`.
    fn split(&self, beta: &ExponentVector) -> (ExponentVector, i64, Vec<i64>) {
        let mut rho = beta.clone();
        let mut three_gamma = ExponentVector::zeros(beta.len());
        let mut gamma = vec![0; self.core.len()];
        for (a, &c) in self.core.iter().enumerate() {
            let b = beta.unit(c);
            let r = b.rem_euclid(3);
            rho.units_mut()[c] = r;
            gamma[a] = (b - r) / 3;
            three_gamma.units_mut()[c] = b - r;
        }
        let h = -pairing2(&self.seed, &rho, &three_gamma) - 9 * self.ordered_weyl2(&gamma);
        (rho, h, gamma)
    }

    /// `sum_{a<b} 2ε_ab g_a g_b` over core variables.
    fn ordered_weyl2(&self, gamma: &[i64]) -> i64 {
        let mut s = 0;
        for a in 0..gamma.len() {
            for b in a + 1..gamma.len() {
                s += self.seed.eps2(self.core[a], self.core[b]) * gamma[a] * gamma[b];
            }
        }
        s
    }

    /// Ordered monomial `x_0^{g_0} x_1^{g_1} ...`.
    fn ordered(&self, gamma: &[i64]) -> Sf {
        let mut out = Sf::one();
        for (a, &g) in gamma.iter().enumerate() {
            if g != 0 {
                out = out.mul(&Sf::gen_pow(a, g), &self.ctx);
            }
        }
        out
    }

    /// `[X^γ]` over core variables.
    pub fn weyl_x(&self, gamma: &[i64]) -> Sf {
        self.ordered(gamma).mul_t(-3 * self.ordered_weyl2(gamma))
    }

    /// `prod_{r=1}^{|α|} (1 + q^{(2r-1)sgn α} x_a)^{sgn α}`.
    pub fn fq(&self, a: usize, alpha: i64) -> Sf {
        let x = Sf::gen(a);
        let mut out = Sf::one();
        for r in 1..=alpha.abs() {
            let f = Sf::one().add(&self.q_pow((2 * r - 1) * alpha.signum()).mul(&x, &self.ctx), &self.ctx);
            out = out.mul(&if alpha > 0 { f } else { f.inv(&self.ctx) }, &self.ctx);
        }
        out
    }

    pub fn var(&self, node: usize) -> Option<usize> {
        self.var_of[node]
    }
}

/// `w^{m/2}` folded into `w^{j/2} t^k`.
fn fold(m: i64) -> (u8, i64) {
    let j = m.rem_euclid(3);
    (j as u8, (m - j) / 3)
}

#[derive(Clone, Debug, Default)]
pub struct Element {
    terms: BTreeMap<(ExponentVector, u8), Sf>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
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

    fn add_term(&mut self, key: (ExponentVector, u8), f: Sf, ctx: &OreCtx) {
        if f.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, f);
            }
            Some(g) => {
                let s = g.add(&f, ctx);
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
        }
    }

    pub fn from_laurent(tor: &Torus, p: &LaurentPoly) -> Element {
        let mut out = Element::zero();
        for (beta, c) in p.terms() {
            let (rho, h, gamma) = tor.split(beta);
            let x = tor.ordered(&gamma);
            for (m, k) in c.terms() {
                let (j, tk) = fold(if tor.classical { 0 } else { m.doubled + h });
                out.add_term((rho.clone(), j), x.mul(&Sf::t_pow(k, tk), &tor.ctx), &tor.ctx);
            }
        }
        out
    }

    /// True iff every coefficient is a Laurent polynomial in the core variables.
    pub fn is_laurent(&self, tor: &Torus) -> bool {
        self.terms.values().all(|f| f.to_laurent(tor.core.len()).is_some())
    }

    /// Back to an integral polynomial over a classical torus, if the element is one.
    pub fn to_classical(&self, tor: &Torus) -> Option<LaurentPoly> {
        assert!(tor.classical, "coefficients are only recoverable at w = 1");
        let mut out = LaurentPoly::zero();
        let n = tor.seed.len();
        for ((rho, _), f) in &self.terms {
            for (gamma, c) in f.to_laurent(tor.core.len())? {
                let mut three = ExponentVector::zeros(n);
                for (a, &v) in tor.core.iter().enumerate() {
                    three.units_mut()[v] = 3 * gamma[a];
                }
                out.add_term(rho + &three, &OmegaPoly::monomial(c.to_i64(), HalfInt::ZERO));
            }
        }
        Some(out)
    }

    pub fn add(&self, o: &Element, tor: &Torus) -> Element {
        let mut out = self.clone();
        for (k, f) in &o.terms {
            out.add_term(k.clone(), f.clone(), &tor.ctx);
        }
        out
    }

    pub fn sub(&self, o: &Element, tor: &Torus) -> Element {
        let mut out = self.clone();
        for (k, f) in &o.terms {
            out.add_term(k.clone(), f.neg(), &tor.ctx);
        }
        out
    }

    /// `x [ρ] = [ρ] τ_ρ(x)` with `τ_ρ(x_c) = w^{6 sum_v ε_cv ρ_v} x_c`.
    fn tau(tor: &Torus, rho: &ExponentVector) -> Vec<i64> {
        tor.core
            .iter()
            .map(|&c| 2 * (0..tor.seed.len()).map(|v| tor.seed.eps2(c, v) * rho.unit(v)).sum::<i64>())
            .collect()
    }

    pub fn mul(&self, o: &Element, tor: &Torus) -> Element {
        let mut out = Element::zero();
        for ((r1, j1), f1) in &self.terms {
            for ((r2, j2), f2) in &o.terms {
                let sum = r1 + r2;
                let (rho, h, gamma) = tor.split(&sum);
                let m = i64::from(*j1) + i64::from(*j2) + pairing2(&tor.seed, r1, r2) + h;
                let (j, tk) = fold(if tor.classical { 0 } else { m });
                let f = tor
                    .ordered(&gamma)
                    .mul(&f1.scale(&Element::tau(tor, r2)), &tor.ctx)
                    .mul(f2, &tor.ctx)
                    .mul_t(tk);
                out.add_term((rho, j), f, &tor.ctx);
            }
        }
        out
    }

    /// Semantic equality.
    pub fn equals(&self, o: &Element, tor: &Torus) -> bool {
        self.sub(o, tor).is_zero()
    }

    /// Moves to another torus over the same core nodes. `node_map[i]` is the
    /// index in `to` of node `i` of `from`.
    pub fn transport(&self, from: &Torus, to: &Torus, node_map: &[usize]) -> Element {
        let images: Vec<Sf> = from
            .core
            .iter()
            .map(|&c| Sf::gen(to.var_of[node_map[c]].expect("core nodes must correspond")))
            .collect();
        let mut out = Element::zero();
        for ((rho, j), f) in &self.terms {
            let mut r = ExponentVector::zeros(to.seed.len());
            for (i, &m) in node_map.iter().enumerate() {
                r.units_mut()[m] = rho.unit(i);
            }
            out.add_term((r, *j), f.substitute(&images, &to.ctx), &to.ctx);
        }
        out
    }

    /// Pulls exponents back along `glue[w] = image of cut node w`; the core is
    /// assumed untouched by the cut.
    pub fn cut(&self, from: &Torus, to: &Torus, glue: &[usize]) -> Element {
        let images: Vec<Sf> = from
            .core
            .iter()
            .map(|&c| {
                let w = glue.iter().position(|&g| g == c).expect("core node has a preimage");
                Sf::gen(to.var_of[w].expect("core nodes must correspond"))
            })
            .collect();
        let mut out = Element::zero();
        for ((rho, j), f) in &self.terms {
            let r = ExponentVector::from_units(glue.iter().map(|&g| rho.unit(g)).collect());
            out.add_term((r, *j), f.substitute(&images, &to.ctx), &to.ctx);
        }
        out
    }

    pub fn render(&self, tor: &Torus) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for ((rho, j), f) in &self.terms {
            let mono: Vec<String> = (0..rho.len())
                .filter(|&i| rho.unit(i) != 0)
                .map(|i| format!("X{}^{{{}}}", tor.seed.node(i), rho.third(i)))
                .collect();
            parts.push(format!("w^{{{}}}[{}]·({})", HalfInt::from_doubled(i64::from(*j)), mono.join(" "), f.render()));
        }
        parts.join(" + ")
    }
}

/// `ν_u`: from the torus of `μ_u(pre)` to the torus of `pre`.
///
/// `pre` supplies the exchange data; the tori supply the products (they differ
/// from `pre` only in the classical case).
pub fn nu(pre: &Seed, u: usize, x: &Element, post_tor: &Torus, pre_tor: &Torus) -> Result<Element> {
    if pre.is_frozen(u) {
        return Err(Error::FrozenNode(pre.node(u).to_string()));
    }
    let ua = pre_tor.var(u).ok_or_else(|| Error::Other(format!("`{}` is not a core node", pre.node(u))))?;
    let ctx = &pre_tor.ctx;
    let images: Vec<Sf> = pre_tor
        .core
        .iter()
        .map(|&c| {
            if c == u {
                return Sf::gen_pow(ua, -1);
            }
            let e = pre.eps2(c, u) / 2;
            let mut g = vec![0; pre_tor.core.len()];
            g[pre_tor.var_of[c].unwrap()] = 1;
            g[ua] += e.max(0);
            pre_tor.weyl_x(&g).mul(&pre_tor.fq(ua, -e), ctx)
        })
        .collect();
    debug_assert_eq!(post_tor.core, pre_tor.core);
    let mut out = Element::zero();
    for ((rho, j), f) in &x.terms {
        let beta = transform_exponents(pre, u, rho);
        let alpha = commutation_exponent(pre, u, &beta);
        let alpha = alpha.to_int().ok_or_else(|| Error::Unbalanced {
            node: pre.node(u).to_string(),
            alpha: alpha.to_string(),
        })?;
        let (r, h, gamma) = pre_tor.split(&beta);
        let (jj, tk) = fold(if pre_tor.classical { 0 } else { i64::from(*j) + h });
        let g = pre_tor
            .ordered(&gamma)
            .mul(&pre_tor.fq(ua, alpha), ctx)
            .mul(&f.substitute(&images, ctx), ctx)
            .mul_t(tk);
        out.add_term((r, jj), g, ctx);
    }
    Ok(out)
}

/// `P_σ`: from the torus of `σ(pre)` to the torus of `pre`, `X'_{σ(v)} -> X_v`.
pub fn permute(sigma: &[usize], x: &Element, from: &Torus, to: &Torus) -> Element {
    let mut inv = vec![0; sigma.len()];
    for (v, &s) in sigma.iter().enumerate() {
        inv[s] = v;
    }
    x.transport(from, to, &inv)
}

/// Steps of a relation word, applied as a composite from the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Mutate(usize),
    Permute(Vec<usize>),
}

/// True iff the composite of the word is the identity on every generator,
/// with the final seed equal to the initial one.
pub fn check_relation(seed: &Seed, word: &[Step]) -> Result<bool> {
    let all: Vec<usize> = (0..seed.len()).collect();
    let mut seeds = vec![seed.clone()];
    for s in word {
        let last = seeds.last().unwrap();
        seeds.push(match s {
            Step::Mutate(k) => crate::quiver::mutate_quiver(last, *k)?,
            Step::Permute(p) => crate::quiver::permute_seed(last, p)?,
        });
    }
    if !crate::quiver::seeds_equal(seeds.last().unwrap(), seed) {
        return Ok(false);
    }
    let tori: Vec<Torus> = seeds.iter().map(|s| Torus::new(s, all.clone())).collect();
    for v in 0..seed.len() {
        let g = LaurentPoly::monomial(ExponentVector::x_power(seed.len(), v, 1));
        let mut x = Element::from_laurent(&tori[word.len()], &g);
        for (i, s) in word.iter().enumerate().rev() {
            x = match s {
                Step::Mutate(k) => nu(&seeds[i], *k, &x, &tori[i + 1], &tori[i])?,
                Step::Permute(p) => permute(p, &x, &tori[i + 1], &tori[i]),
            };
        }
        if !x.equals(&Element::from_laurent(&tori[0], &g), &tori[0]) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two(e: &str) -> Seed {
        Seed::parse(&format!("node 1\nnode 2\neps 1 2 {e}\n")).unwrap()
    }

    #[test]
    fn involution() {
        assert!(check_relation(&two("1"), &[Step::Mutate(0), Step::Mutate(0)]).unwrap());
    }

    #[test]
    fn commuting_square() {
        let w = [Step::Mutate(0), Step::Mutate(1), Step::Mutate(0), Step::Mutate(1)];
        assert!(check_relation(&two("0"), &w).unwrap());
    }

    #[test]
    fn pentagon() {
        let s = two("1");
        let w = [Step::Mutate(0), Step::Mutate(1), Step::Mutate(0), Step::Mutate(1), Step::Mutate(0), Step::Permute(vec![1, 0])];
        assert!(check_relation(&s, &w).unwrap());
        assert!(check_relation(&two("-1"), &w).unwrap());
        let short = [Step::Mutate(0), Step::Mutate(1), Step::Mutate(0), Step::Mutate(1), Step::Mutate(0)];
        assert!(!check_relation(&s, &short).unwrap());
    }
}
