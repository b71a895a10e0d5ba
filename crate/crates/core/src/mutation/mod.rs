//! Quantum mutation maps and the flip coordinate change.
//!
//! Two representations are provided. [`QuantumRational`] keeps right fractions
//! whose denominators are products of binomials `(1 + w^{m} X_u)`, which is what
//! the trace computations produce and is exact. [`exact::Element`] localizes at
//! the whole core torus and handles arbitrary denominators, with `t` evaluated
//! at a fixed point of a prime field.

pub mod exact;
pub mod ore;

use std::collections::BTreeMap;

use crate::balance::{is_delta_balanced, transform_exponents};
use crate::coeff::{HalfInt, OmegaPoly};
use crate::error::{Error, Result};
use crate::qtorus::{
    commutation_exponent, pairing2, poly_add, poly_mul, ExponentVector, LaurentPoly, WeylMonomial,
};
use crate::quiver::{mutate_quiver, seeds_equal, Seed};
use crate::surface::{build_3triangulation_quiver, Flip, FlipContext, QuiverLabeling};

use exact::{Element, Torus};

/// `1 + w^{omega} X_node`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinomialFactor {
    pub node: usize,
    pub omega: HalfInt,
}

impl BinomialFactor {
    /// `1 + q^k X_node`.
    pub fn q(node: usize, k: i64) -> Self {
        BinomialFactor { node, omega: HalfInt::from_doubled(18 * k) }
    }

    /// Exponent in `q`-units, when integral.
    pub fn qexp(&self) -> Option<i64> {
        (self.omega.doubled % 18 == 0).then_some(self.omega.doubled / 18)
    }

    pub fn to_poly(&self, n: usize) -> LaurentPoly {
        let mut p = LaurentPoly::one(n);
        p.add_term(ExponentVector::x_power(n, self.node, 1), &OmegaPoly::monomial(1, self.omega));
        p
    }

    /// `[β]^{-1} · self · [β]`.
    fn conj(&self, seed: &Seed, beta: &ExponentVector) -> Self {
        let s: i64 = (0..seed.len()).map(|v| seed.eps2(self.node, v) * beta.unit(v)).sum();
        BinomialFactor { node: self.node, omega: HalfInt::from_doubled(self.omega.doubled + 6 * s) }
    }

    pub fn render(&self, seed: &Seed) -> String {
        match self.qexp() {
            Some(k) => format!("(1+q^{{{k}}}X{})", seed.node(self.node)),
            None => format!("(1+w^{{{}}}X{})", self.omega, seed.node(self.node)),
        }
    }
}

/// `sum N_i · (f_{i,1} ... f_{i,k})^{-1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuantumRational {
    pub terms: Vec<(LaurentPoly, Vec<BinomialFactor>)>,
}

impl QuantumRational {
    pub fn from_laurent(p: LaurentPoly) -> Self {
        if p.is_zero() {
            return QuantumRational::default();
        }
        QuantumRational { terms: vec![(p, Vec::new())] }
    }

    pub fn render(&self, seed: &Seed) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(n, d)| {
                let num = crate::qtorus::render(seed, n);
                if d.is_empty() {
                    num
                } else {
                    let den: Vec<String> = d.iter().map(|f| f.render(seed)).collect();
                    format!("({num})·({})^-1", den.join(""))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Factors of `F^q(X_u; α)`: to multiply when `α > 0`, to invert when `α < 0`.
pub fn fq_factors(u: usize, alpha: i64) -> (Vec<BinomialFactor>, Vec<BinomialFactor>) {
    let fs: Vec<BinomialFactor> =
        (1..=alpha.abs()).map(|r| BinomialFactor::q(u, (2 * r - 1) * alpha.signum())).collect();
    if alpha > 0 {
        (fs, Vec::new())
    } else {
        (Vec::new(), fs)
    }
}

/// Exponent part of `ν_u`: Weyl monomials go to Weyl monomials.
pub fn nu_prime(pre_seed: &Seed, u: usize, p: &LaurentPoly) -> Result<LaurentPoly> {
    if pre_seed.is_frozen(u) {
        return Err(Error::FrozenNode(pre_seed.node(u).to_string()));
    }
    let mut out = LaurentPoly::zero();
    for (e, c) in p.terms() {
        out.add_term(transform_exponents(pre_seed, u, e), c);
    }
    Ok(out)
}

/// Right multiplication of each monomial by `F^q(X_u; α)`.
pub fn nu_sharp(seed: &Seed, u: usize, p: &LaurentPoly) -> Result<QuantumRational> {
    let n = seed.len();
    let mut terms = Vec::new();
    for (e, c) in p.terms() {
        let alpha = commutation_exponent(seed, u, e);
        let alpha = alpha
            .to_int()
            .ok_or_else(|| Error::Unbalanced { node: seed.node(u).to_string(), alpha: alpha.to_string() })?;
        let (pos, neg) = fq_factors(u, alpha);
        let mut num = LaurentPoly::zero();
        num.add_term(e.clone(), c);
        for f in pos {
            num = poly_mul(seed, &num, &f.to_poly(n));
        }
        terms.push((num, neg));
    }
    Ok(QuantumRational { terms })
}

/// `ν_u = ν^♯_u ∘ ν'_u`, from `μ_u(pre_seed)` to `pre_seed`.
///
/// A denominator factor at `w` is carried only when `w = u` or `ε_uw = 0`.
pub fn nu_omega(pre_seed: &Seed, u: usize, x: &QuantumRational) -> Result<QuantumRational> {
    let mut out = Vec::new();
    for (num, den) in &x.terms {
        // ν(f)^{-1} = g^{-1} · m
        let mut carried: Vec<(BinomialFactor, Option<WeylMonomial>)> = Vec::new();
        for f in den {
            if f.node == u {
                let g = BinomialFactor { node: u, omega: -f.omega };
                let m = WeylMonomial {
                    sign: 1,
                    omega: -f.omega,
                    exps: ExponentVector::x_power(pre_seed.len(), u, 1),
                };
                carried.push((g, Some(m)));
            } else if pre_seed.eps2(u, f.node) == 0 {
                carried.push((*f, None));
            } else {
                return Err(Error::Transport {
                    factor: pre_seed.node(f.node).to_string(),
                    node: pre_seed.node(u).to_string(),
                });
            }
        }
        let image = nu_sharp(pre_seed, u, &nu_prime(pre_seed, u, num)?)?;
        for (mut n, mut d) in image.terms {
            for (g, m) in carried.iter().rev() {
                d.insert(0, *g);
                if let Some(m) = m {
                    n = poly_mul(pre_seed, &n, &m.to_poly());
                    d = d.iter().map(|f| f.conj(pre_seed, &m.exps)).collect();
                }
            }
            out.push((n, d));
        }
    }
    Ok(QuantumRational { terms: out })
}

fn commute(seed: &Seed, a: &BinomialFactor, b: &BinomialFactor) -> bool {
    a.node == b.node || seed.eps2(a.node, b.node) == 0
}

/// `N = Q · f` for `f = 1 + c X_u`, if such a Laurent `Q` exists.
pub fn right_divide(seed: &Seed, num: &LaurentPoly, f: &BinomialFactor) -> Option<LaurentPoly> {
    let u = f.node;
    let n = seed.len();
    let c = OmegaPoly::monomial(1, f.omega);
    // [β] = w^{-<γ,3k e_u>} [γ] X_u^k
    let mut groups: BTreeMap<ExponentVector, BTreeMap<i64, OmegaPoly>> = BTreeMap::new();
    for (beta, coef) in num.terms() {
        let r = beta.unit(u).rem_euclid(3);
        let k = (beta.unit(u) - r) / 3;
        let mut gamma = beta.clone();
        gamma.units_mut()[u] = r;
        let ph = pairing2(seed, &gamma, &ExponentVector::x_power(n, u, k));
        groups.entry(gamma).or_default().insert(k, coef.shift(-ph));
    }
    let mut out = LaurentPoly::zero();
    for (gamma, p) in groups {
        let lo = *p.keys().next().unwrap();
        let hi = *p.keys().next_back().unwrap();
        if lo == hi {
            return None;
        }
        let mut q: BTreeMap<i64, OmegaPoly> = BTreeMap::new();
        let mut prev = OmegaPoly::zero();
        for k in lo..hi {
            let pk = p.get(&k).cloned().unwrap_or_default();
            let qk = &pk - &(&c * &prev);
            q.insert(k, qk.clone());
            prev = qk;
        }
        if p[&hi] != &c * &prev {
            return None;
        }
        for (k, qk) in q {
            let ph = pairing2(seed, &gamma, &ExponentVector::x_power(n, u, k));
            let mut beta = gamma.clone();
            beta.units_mut()[u] += 3 * k;
            out.add_term(beta, &qk.shift(ph));
        }
    }
    Some(out)
}

/// Merges terms over common denominators and cancels binomial factors by
/// exact right division.
pub fn normalize(seed: &Seed, x: &QuantumRational) -> QuantumRational {
    let n = seed.len();
    let terms: Vec<&(LaurentPoly, Vec<BinomialFactor>)> = x.terms.iter().filter(|t| !t.0.is_zero()).collect();
    let all: Vec<BinomialFactor> = terms.iter().flat_map(|t| t.1.iter().copied()).collect();
    let commuting = all.iter().all(|a| all.iter().all(|b| commute(seed, a, b)));
    let mut grouped: Vec<(LaurentPoly, Vec<BinomialFactor>)> = Vec::new();
    if commuting {
        // least common multiple as a multiset
        let mut lcm: BTreeMap<BinomialFactor, usize> = BTreeMap::new();
        for (_, d) in &terms {
            let mut cnt: BTreeMap<BinomialFactor, usize> = BTreeMap::new();
            for f in d {
                *cnt.entry(*f).or_default() += 1;
            }
            for (f, k) in cnt {
                let e = lcm.entry(f).or_default();
                *e = (*e).max(k);
            }
        }
        let mut total = LaurentPoly::zero();
        for (num, d) in &terms {
            let mut missing = lcm.clone();
            for f in d {
                *missing.get_mut(f).unwrap() -= 1;
            }
            let mut t = num.clone();
            for (f, k) in missing {
                for _ in 0..k {
                    t = poly_mul(seed, &t, &f.to_poly(n));
                }
            }
            total = poly_add(&total, &t);
        }
        let den: Vec<BinomialFactor> = lcm.iter().flat_map(|(f, k)| std::iter::repeat_n(*f, *k)).collect();
        grouped.push((total, den));
    } else {
        for (num, d) in &terms {
            match grouped.iter_mut().find(|g| &g.1 == d) {
                Some(g) => g.0 = poly_add(&g.0, num),
                None => grouped.push(((*num).clone(), d.clone())),
            }
        }
    }
    let mut out = Vec::new();
    for (mut num, mut den) in grouped {
        if num.is_zero() {
            continue;
        }
        loop {
            let mut progressed = false;
            for i in (0..den.len()).rev() {
                if !den[i + 1..].iter().all(|g| commute(seed, &den[i], g)) {
                    continue;
                }
                if let Some(q) = right_divide(seed, &num, &den[i]) {
                    num = q;
                    den.remove(i);
                    progressed = true;
                    break;
                }
            }
            if !progressed {
                break;
            }
        }
        out.push((num, den));
    }
    QuantumRational { terms: out }
}

pub fn is_laurent(x: &QuantumRational) -> Option<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for (n, d) in &x.terms {
        if !d.is_empty() {
            return None;
        }
        out = poly_add(&out, n);
    }
    Some(out)
}

/// `μ^q_u` on the `X`-subalgebra, from `μ_u(seed)` to `seed`.
pub fn mu_q(seed: &Seed, u: usize, p: &LaurentPoly) -> Result<QuantumRational> {
    for (e, _) in p.terms() {
        if let Some(i) = (0..e.len()).find(|&i| e.unit(i) % 3 != 0) {
            return Err(Error::NonIntegral(seed.node(i).to_string()));
        }
    }
    let r = nu_omega(seed, u, &QuantumRational::from_laurent(p.clone()))?;
    Ok(normalize(seed, &r))
}

/// The seeds `Δ = Δ^(0), ..., Δ^(4) ≅ Δ'` of a flip, all indexed like `Δ`.
#[derive(Clone, Debug)]
pub struct FlipChain {
    pub flip: Flip,
    pub labeling: QuiverLabeling,
    pub after_labeling: QuiverLabeling,
    pub seeds: Vec<Seed>,
    pub after_seed: Seed,
    /// Index in `Δ` of each node of `Δ'`.
    pub to_before: Vec<usize>,
    /// Seed indices of `v_3, v_4, v_7, v_12`.
    pub mutated: [usize; 4],
}

impl FlipChain {
    pub fn new(flip: Flip) -> Result<Self> {
        let (s0, labeling) = build_3triangulation_quiver(&flip.before);
        let (after_seed, after_labeling) = build_3triangulation_quiver(&flip.after);
        let mut mutated = [0; 4];
        for (i, j) in FlipContext::SEQUENCE.iter().enumerate() {
            mutated[i] = s0.idx(flip.context.v(*j))?;
        }
        let mut seeds = vec![s0];
        for &k in &mutated {
            let next = mutate_quiver(seeds.last().unwrap(), k)?;
            seeds.push(next);
        }
        let fwd = flip.index_map(&seeds[0], &after_seed);
        let mut to_before = vec![0; fwd.len()];
        for (i, &j) in fwd.iter().enumerate() {
            to_before[j] = i;
        }
        let relabeled = crate::quiver::permute_seed(&after_seed, &to_before)?;
        let same_eps = (0..relabeled.len())
            .all(|i| (0..relabeled.len()).all(|j| relabeled.eps2(i, j) == seeds[4].eps2(i, j)));
        if !same_eps {
            return Err(Error::Flip("quiver of the flipped triangulation differs from the mutated quiver".into()));
        }
        debug_assert!(!seeds_equal(&seeds[0], &seeds[1]) || seeds[0].is_empty());
        Ok(FlipChain { flip, labeling, after_labeling, seeds, after_seed, to_before, mutated })
    }

    /// A polynomial over `Δ'` in the node indexing of `Δ`.
    pub fn pull_indices(&self, p: &LaurentPoly) -> LaurentPoly {
        p.reindex(self.seeds[0].len(), &self.to_before)
    }

    /// `Θ = ν_{v3} ν_{v4} ν_{v7} ν_{v12}` on a `Δ'`-balanced polynomial over `Δ'`.
    pub fn theta(&self, p: &LaurentPoly) -> Result<QuantumRational> {
        self.check_after_balanced(p)?;
        let mut x = QuantumRational::from_laurent(self.pull_indices(p));
        for r in (0..4).rev() {
            x = normalize(&self.seeds[r], &nu_omega(&self.seeds[r], self.mutated[r], &x)?);
        }
        Ok(x)
    }

    fn check_after_balanced(&self, p: &LaurentPoly) -> Result<()> {
        for (e, _) in p.terms() {
            let rep = is_delta_balanced(&self.flip.after, &self.after_labeling, e);
            if let Some(f) = rep.failures.first() {
                return Err(Error::Unbalanced { node: format!("{} {} {}", f.triangle, f.condition, f.at), alpha: f.value.to_string() });
            }
        }
        Ok(())
    }

    /// `ν_{v4} ν_{v3}` on a polynomial over `Δ`; the result lives over `Δ^(2)`.
    pub fn step_forward(&self, p: &LaurentPoly) -> Result<QuantumRational> {
        let mut x = QuantumRational::from_laurent(p.clone());
        for r in 0..2 {
            x = normalize(&self.seeds[r + 1], &nu_omega(&self.seeds[r + 1], self.mutated[r], &x)?);
        }
        Ok(x)
    }

    /// `ν_{v7} ν_{v12}` on a polynomial over `Δ'`; the result lives over `Δ^(2)`.
    pub fn step_backward(&self, p: &LaurentPoly) -> Result<QuantumRational> {
        let mut x = QuantumRational::from_laurent(self.pull_indices(p));
        for r in [3, 2] {
            x = normalize(&self.seeds[r], &nu_omega(&self.seeds[r], self.mutated[r], &x)?);
        }
        Ok(x)
    }

    /// Torus of `Δ^(r)` localized at the four mutated nodes.
    pub fn torus(&self, r: usize) -> Torus {
        Torus::new(&self.seeds[r], self.mutated.to_vec())
    }

    pub fn classical_torus(&self, r: usize) -> Torus {
        Torus::classical(&self.seeds[r], self.mutated.to_vec())
    }

    /// Torus of `Δ'` in its own indexing, core in the order `v3, v4, v7, v12`.
    pub fn after_torus(&self) -> Torus {
        let fwd: Vec<usize> = self.mutated.iter().map(|&i| self.to_before.iter().position(|&b| b == i).unwrap()).collect();
        Torus::new(&self.after_seed, fwd)
    }

    /// Exact `Θ` on an element over [`FlipChain::after_torus`]-compatible data.
    pub fn theta_exact(&self, x: &Element, from: &Torus) -> Result<Element> {
        let tori: Vec<Torus> = (0..5).map(|r| self.torus(r)).collect();
        let mut y = x.transport(from, &tori[4], &self.to_before);
        for r in (0..4).rev() {
            y = exact::nu(&self.seeds[r], self.mutated[r], &y, &tori[r + 1], &tori[r])?;
        }
        Ok(y)
    }

    /// `Θ` at `w = 1` on a classical polynomial over `Δ'`.
    pub fn theta_classical(&self, p: &crate::qtorus::ClassicalPoly) -> Result<Option<crate::qtorus::ClassicalPoly>> {
        let tori: Vec<Torus> = (0..5).map(|r| self.classical_torus(r)).collect();
        let q = crate::qtorus::weyl_quantize(p);
        let mut y = Element::from_laurent(&tori[4], &self.pull_indices(&q));
        for r in (0..4).rev() {
            y = exact::nu(&self.seeds[r], self.mutated[r], &y, &tori[r + 1], &tori[r])?;
        }
        Ok(y.to_classical(&tori[0]).map(|l| crate::qtorus::classicalize(&l)))
    }

    /// Exponents of `ν_{v3}` and `ν_{v4}` when a monomial over `Δ` is carried
    /// forward to `Δ^(2)`.
    pub fn step_alphas(&self, a: &ExponentVector) -> [crate::coeff::ThirdInt; 2] {
        let a1 = transform_exponents(&self.seeds[1], self.mutated[0], a);
        let alpha = commutation_exponent(&self.seeds[1], self.mutated[0], &a1);
        let a2 = transform_exponents(&self.seeds[2], self.mutated[1], &a1);
        [alpha, commutation_exponent(&self.seeds[2], self.mutated[1], &a2)]
    }

    /// `α_r` for `r = 1..4` on exponents over `Δ'`.
    pub fn alphas(&self, a_after: &ExponentVector) -> [crate::coeff::ThirdInt; 4] {
        let mut a = self.pull_indices(&LaurentPoly::monomial(a_after.clone())).terms().next().unwrap().0.clone();
        let mut out = [crate::coeff::ThirdInt::ZERO; 4];
        for r in (0..4).rev() {
            a = transform_exponents(&self.seeds[r], self.mutated[r], &a);
            out[r] = commutation_exponent(&self.seeds[r], self.mutated[r], &a);
        }
        out
    }
}
