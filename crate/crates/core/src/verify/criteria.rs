//! The nine acceptance checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::balance::{random_balanced, transform_exponents};
use crate::coeff::{HalfInt, ThirdInt};
use crate::error::{Error, Result};
use crate::mutation::exact::{check_relation, nu, Element, Step, Torus};
use crate::mutation::{fq_factors, is_laurent, normalize, nu_omega, nu_prime, right_divide, FlipChain, QuantumRational};
use crate::qtorus::{
    classicalize, is_multiplicity_free, mono_mul, poly_add, poly_mul, render, star, weyl_quantize, ClassicalPoly,
    ExponentVector, LaurentPoly, WeylMonomial,
};
use crate::quiver::Seed;
use crate::surface::{build_3triangulation_quiver, cut, cut_copy, cutting_map, flip, QuiverLabeling, Triangulation};
use crate::trace::{peripheral_highest_term, StatePair, Surface, Terms, Turn, WebPath};

use super::{fixtures, golden_check, Check, FlipSetup, Report};

/// Settings shared by the suites.
#[derive(Clone, Debug)]
pub struct Options {
    pub golden_dir: std::path::PathBuf,
    pub regen_golden: bool,
    /// Random samples where a criterion asks for them.
    pub samples: usize,
    pub rng_seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            golden_dir: std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("golden"),
            regen_golden: false,
            samples: 100,
            rng_seed: 0x5133,
        }
    }
}

pub const TITLES: [&str; 9] = [
    "flip compatibility of quadrilateral traces",
    "exponent tables of the first two mutations",
    "Laurentness after the first two mutations",
    "mutation consistency relations",
    "product law against brute-force ordering",
    "balancedness of trace values and mutation exponents",
    "determinant, star, quantization and classical limit",
    "cutting compatibility",
    "peripheral loop",
];

/// Runs criterion `k` (1-based).
pub fn run(k: usize, opts: &Options) -> Report {
    let setup = FlipSetup::quadrilateral();
    match k {
        1 => flip_compatibility(&setup),
        2 => tables(&setup, opts),
        3 => step_laurent(&setup),
        4 => consistency(&setup, opts),
        5 => product_law(opts),
        6 => balancedness(&setup, opts),
        7 => structure(&setup),
        8 => cutting(&setup, opts),
        9 => peripheral(),
        _ => panic!("no criterion {k}"),
    }
}

pub fn run_all(opts: &Options) -> Vec<Report> {
    (1..=9).map(|k| run(k, opts)).collect()
}

fn suite(k: usize) -> String {
    format!("criterion {k}: {}", TITLES[k - 1])
}

fn outcome<T>(name: String, r: Result<T>, ok: impl FnOnce(T) -> (bool, String)) -> Check {
    match r {
        Ok(v) => {
            let (pass, detail) = ok(v);
            Check::new(name, pass, detail)
        }
        Err(e) => Check::new(name, false, format!("error: {e}")),
    }
}

fn expected_actual(seed: &Seed, expected: &LaurentPoly, actual: &LaurentPoly) -> String {
    format!("\n    expected: {}\n    actual:   {}", render(seed, expected), render(seed, actual))
}

/// Both sides of the flip for every web and state.
struct Values {
    web: usize,
    state: StatePair,
    before: LaurentPoly,
    after: LaurentPoly,
}

fn values(s: &FlipSetup) -> Vec<Values> {
    let (b, a) = (s.before(), s.after());
    let mut out = Vec::new();
    for (web, (p, q)) in s.webs.iter().enumerate() {
        for state in StatePair::all() {
            out.push(Values {
                web,
                state,
                before: b.edge_trace(p, state).expect("open web"),
                after: a.edge_trace(q, state).expect("open web"),
            });
        }
    }
    out
}

fn tag(s: &FlipSetup, v: &Values) -> String {
    format!("{} {}", s.webs[v.web].0.id, v.state)
}

pub fn flip_compatibility(s: &FlipSetup) -> Report {
    let (mut rep, t) = Report::start(&suite(1));
    let seed = s.seed();
    let vals = values(s);
    for v in &vals {
        rep.push(outcome(tag(s, v), s.chain.theta(&v.after), |x| match is_laurent(&x) {
            Some(l) if l == v.before => (true, String::new()),
            Some(l) => (false, expected_actual(seed, &v.before, &l)),
            None => (false, format!("normalization left denominators: {}", x.render(seed))),
        }));
    }
    let quantum_time = t.elapsed();
    rep.push(Check::new(
        "runtime under 5 s",
        quantum_time.as_secs_f64() < 5.0,
        format!("{:.3} s", quantum_time.as_secs_f64()),
    ));
    let from = s.chain.after_torus();
    let to = s.chain.torus(0);
    for v in &vals {
        let x = Element::from_laurent(&from, &v.after);
        let expect = Element::from_laurent(&to, &v.before);
        rep.push(outcome(format!("{} exact", tag(s, v)), s.chain.theta_exact(&x, &from), |y| {
            if !y.is_laurent(&to) {
                (false, "not a Laurent polynomial".into())
            } else if !y.equals(&expect, &to) {
                (false, format!("differs from {}", expect.render(&to)))
            } else {
                (true, String::new())
            }
        }));
    }
    rep.finish(t)
}

pub fn tables(s: &FlipSetup, opts: &Options) -> Report {
    let (mut rep, t) = Report::start(&suite(2));
    for (w, (p, _)) in s.webs.iter().enumerate() {
        rep.push(golden_check(&opts.golden_dir, &format!("{}.txt", p.id), &s.golden_text(w), opts.regen_golden));
        let bad: Vec<String> = s
            .table_columns(w)
            .iter()
            .filter_map(|(name, e)| {
                let a = s.chain.step_alphas(e);
                let unit = a.iter().all(|x| matches!(x.to_int(), Some(-1..=1)));
                (!unit).then(|| format!("{name}: {} {}", a[0], a[1]))
            })
            .collect();
        rep.push(Check::new(format!("{} exponents in -1..1", p.id), bad.is_empty(), bad.join(", ")));
    }
    rep.finish(t)
}

/// `Wl` of one classical term.
fn term_value(c: i64, e: &ExponentVector) -> LaurentPoly {
    weyl_quantize(&ClassicalPoly::monomial(c, e.clone()))
}

fn forward_laurent(s: &FlipSetup, p: &LaurentPoly) -> Result<Option<LaurentPoly>> {
    Ok(is_laurent(&s.chain.step_forward(p)?))
}

/// The exponent-only image over `Δ^(2)` of a pair sum, right-divided by the
/// binomial it is cancelled against: that of `v4` when its exponent is negative,
/// else that of `v3`.
pub fn pair_quotient(s: &FlipSetup, sum: &LaurentPoly, alphas: [ThirdInt; 2]) -> Result<Option<LaurentPoly>> {
    let c = &s.chain;
    let moved = nu_prime(&c.seeds[2], c.mutated[1], &nu_prime(&c.seeds[1], c.mutated[0], sum)?)?;
    let (u, alpha) = if alphas[1].tripled < 0 { (c.mutated[1], alphas[1]) } else { (c.mutated[0], alphas[0]) };
    let alpha = alpha.to_int().ok_or_else(|| Error::Unbalanced { node: c.seeds[2].node(u).into(), alpha: alpha.to_string() })?;
    let mut q = moved;
    for f in fq_factors(u, alpha).1 {
        match right_divide(&c.seeds[2], &q, &f) {
            Some(x) => q = x,
            None => return Ok(None),
        }
    }
    Ok(Some(q))
}

/// A pair of terms of one entry whose images only become Laurent together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cancellation {
    pub web: String,
    pub state: StatePair,
    /// 1-based term positions.
    pub terms: (usize, usize),
}

pub fn parse_cancellations(text: &str) -> Result<Vec<Cancellation>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Parse { line: n + 1, msg: format!("expected `<web> <e1,e2> <k> <k>`, got `{line}`") };
        if f.len() != 4 {
            return Err(bad());
        }
        let k1 = f[2].parse().map_err(|_| bad())?;
        let k2 = f[3].parse().map_err(|_| bad())?;
        out.push(Cancellation { web: f[0].into(), state: StatePair::parse(f[1])?, terms: (k1, k2) });
    }
    Ok(out)
}

pub fn step_laurent(s: &FlipSetup) -> Report {
    let (mut rep, t) = Report::start(&suite(3));
    for v in values(s) {
        rep.push(outcome(tag(s, &v), forward_laurent(s, &v.before), |l| match l {
            Some(l) if is_multiplicity_free(&l) => (true, String::new()),
            Some(l) => (false, format!("repeated exponents: {}", render(&s.chain.seeds[2], &l))),
            None => (false, "denominators remain".into()),
        }));
    }
    let pairs = parse_cancellations(fixtures::CANCELLATIONS).expect("bundled data is valid");
    let sf = s.before();
    let mut covered: Vec<(usize, StatePair, usize)> = Vec::new();
    for c in &pairs {
        let name = format!("{} {} terms {}+{}", c.web, c.state, c.terms.0, c.terms.1);
        let res = (|| -> Result<(bool, String)> {
            let w = s.web(&c.web)?;
            let Terms(ts) = sf.edge_terms(&s.webs[w].0, c.state)?;
            let pick = |k: usize| ts.get(k.wrapping_sub(1)).ok_or_else(|| Error::Other(format!("no term {k}")));
            let (a, b) = (pick(c.terms.0)?, pick(c.terms.1)?);
            let (pa, pb) = (term_value(a.0, &a.1), term_value(b.0, &b.1));
            covered.push((w, c.state, c.terms.0));
            covered.push((w, c.state, c.terms.1));
            if forward_laurent(s, &pa)?.is_some() || forward_laurent(s, &pb)?.is_some() {
                return Ok((false, "a single term is already Laurent".into()));
            }
            if forward_laurent(s, &poly_add(&pa, &pb))?.is_none() {
                return Ok((false, "sum still has denominators".into()));
            }
            let (ea, eb) = (s.chain.step_alphas(&a.1), s.chain.step_alphas(&b.1));
            if ea != eb {
                return Ok((false, format!("exponents differ: {} {} vs {} {}", ea[0], ea[1], eb[0], eb[1])));
            }
            Ok(match pair_quotient(s, &poly_add(&pa, &pb), ea)? {
                Some(m) if m.len() == 1 => (true, String::new()),
                Some(m) => (false, format!("quotient has {} terms", m.len())),
                None => (false, "binomial factor does not divide the sum".into()),
            })
        })();
        rep.push(outcome(name, res, |x| x));
    }
    // every term that is not Laurent on its own must be in a listed pair
    let mut missing = Vec::new();
    for (w, (p, _)) in s.webs.iter().enumerate() {
        for st in StatePair::all() {
            let Terms(ts) = sf.edge_terms(p, st).unwrap();
            for (k, (c, e)) in ts.iter().enumerate() {
                let lone = forward_laurent(s, &term_value(*c, e)).ok().flatten().is_none();
                if lone && !covered.contains(&(w, st, k + 1)) {
                    missing.push(format!("{} {st}_{}", p.id, k + 1));
                }
            }
        }
    }
    rep.push(Check::new("listed pairs cover every non-Laurent term", missing.is_empty(), missing.join(", ")));
    rep.finish(t)
}

fn random_seed(rng: &mut ChaCha8Rng, n: usize, half: bool) -> Seed {
    let nodes = (1..=n).map(|i| i.to_string()).collect();
    let mut s = Seed::new(nodes, vec![false; n]).unwrap();
    for i in 0..n {
        for j in i + 1..n {
            let d = if half { rng.gen_range(-2..=2) } else { 2 * rng.gen_range(-1..=1) };
            s.set_eps(i, j, HalfInt::from_doubled(d));
        }
    }
    s
}

fn swap(n: usize, v: usize, w: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(v, w);
    p
}

/// Relation words that should hold on `seed`, by pairwise exchange entry
/// between mutable nodes.
pub fn relations(seed: &Seed) -> Vec<(String, Vec<Step>)> {
    let n = seed.len();
    let mutable: Vec<usize> = (0..n).filter(|&v| !seed.is_frozen(v)).collect();
    let mut out = Vec::new();
    for &v in &mutable {
        out.push((format!("involution:{}", seed.node(v)), vec![Step::Mutate(v), Step::Mutate(v)]));
    }
    for (i, &v) in mutable.iter().enumerate() {
        for &w in &mutable[i + 1..] {
            let name = |k: &str| format!("{k}:{},{}", seed.node(v), seed.node(w));
            match seed.eps2(v, w) {
                0 => out.push((name("square"), [v, w, v, w].map(Step::Mutate).to_vec())),
                2 | -2 => {
                    let mut word = [v, w, v, w, v].map(Step::Mutate).to_vec();
                    word.push(Step::Permute(swap(n, v, w)));
                    out.push((name("pentagon"), word));
                }
                _ => {}
            }
        }
    }
    out
}

pub fn consistency(s: &FlipSetup, opts: &Options) -> Report {
    let (mut rep, t) = Report::start(&suite(4));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed);
    for n in 2..=4 {
        for trial in 0..3 {
            let seed = random_seed(&mut rng, n, false);
            for (name, word) in relations(&seed) {
                rep.push(outcome(format!("{n} nodes #{trial} {name}"), check_relation(&seed, &word), |ok| (ok, String::new())));
            }
        }
    }
    let c = &s.chain;
    let tori: Vec<Torus> = (0..5).map(|r| c.torus(r)).collect();
    let (tri, lab) = (&c.flip.before, &c.labeling);
    let mut failures = Vec::new();
    let mut formal = Vec::new();
    for i in 0..opts.samples {
        let mut a = random_balanced(tri, lab, c.seeds[0].len(), 1, &mut rng);
        for r in 0..4 {
            let p = LaurentPoly::monomial(a.clone());
            let x = Element::from_laurent(&tori[r], &p);
            let u = c.mutated[r];
            let twice = nu_omega(&c.seeds[r + 1], u, &QuantumRational::from_laurent(p.clone()))
                .and_then(|y| nu_omega(&c.seeds[r], u, &y))
                .map(|z| is_laurent(&normalize(&c.seeds[r], &z)));
            match twice {
                Ok(Some(z)) if z == p => {}
                Ok(_) => formal.push(format!("sample {i} at {}", c.seeds[r].node(u))),
                Err(e) => formal.push(format!("sample {i} at {}: {e}", c.seeds[r].node(u))),
            }
            let back = nu(&c.seeds[r + 1], u, &x, &tori[r], &tori[r + 1])
                .and_then(|y| nu(&c.seeds[r], u, &y, &tori[r + 1], &tori[r]));
            match back {
                Ok(z) if z.equals(&x, &tori[r]) => {}
                Ok(_) => failures.push(format!("sample {i} at {}", c.seeds[r].node(u))),
                Err(e) => failures.push(format!("sample {i} at {}: {e}", c.seeds[r].node(u))),
            }
            a = transform_exponents(&c.seeds[r + 1], u, &a);
        }
    }
    rep.push(Check::new(
        format!("balanced mutation twice is the identity on {} monomials", opts.samples),
        formal.is_empty(),
        formal.join("; "),
    ));
    rep.push(Check::new(
        format!("same in the skew field on {} monomials", opts.samples),
        failures.is_empty(),
        failures.join("; "),
    ));
    rep.finish(t)
}

/// Product of two Weyl monomials by writing both as words in `Z_v^{±1}` and
/// bubble-sorting into index order, one adjacent swap at a time.
pub fn brute_force_product(seed: &Seed, m1: &WeylMonomial, m2: &WeylMonomial) -> WeylMonomial {
    let n = seed.len();
    // doubled w-exponent of [Z^a] relative to the ordered word Z_1^{a_1}...Z_n^{a_n}
    let weyl2 = |a: &ExponentVector| -> i64 {
        let mut s = 0;
        for i in 0..n {
            for j in i + 1..n {
                s += seed.eps2(i, j) * a.unit(i) * a.unit(j);
            }
        }
        s
    };
    let mut word: Vec<(usize, i64)> = Vec::new();
    for m in [m1, m2] {
        for v in 0..n {
            let k = m.exps.unit(v);
            word.extend(std::iter::repeat_n((v, k.signum()), k.unsigned_abs() as usize));
        }
    }
    let mut w2 = m1.omega.doubled + m2.omega.doubled - weyl2(&m1.exps) - weyl2(&m2.exps);
    let mut sorted = false;
    while !sorted {
        sorted = true;
        for i in 0..word.len().saturating_sub(1) {
            let ((x, s), (y, t)) = (word[i], word[i + 1]);
            if x > y {
                // Z_x^s Z_y^t = w^{2 ε_xy s t} Z_y^t Z_x^s
                w2 += 2 * seed.eps2(x, y) * s * t;
                word.swap(i, i + 1);
                sorted = false;
            }
        }
    }
    let total = &m1.exps + &m2.exps;
    WeylMonomial { sign: m1.sign * m2.sign, omega: HalfInt::from_doubled(w2 + weyl2(&total)), exps: total }
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize) -> WeylMonomial {
    let units = (0..n).map(|_| if rng.gen_bool(0.6) { rng.gen_range(-4..=4) } else { 0 }).collect();
    WeylMonomial {
        sign: if rng.gen_bool(0.5) { 1 } else { -1 },
        omega: HalfInt::from_doubled(rng.gen_range(-6..=6)),
        exps: ExponentVector::from_units(units),
    }
}

pub fn product_law(opts: &Options) -> Report {
    let (mut rep, t) = Report::start(&suite(5));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed ^ 5);
    let pairs = opts.samples.max(1000);
    let mut bad = Vec::new();
    for i in 0..pairs {
        let n = rng.gen_range(1..=12);
        let seed = random_seed(&mut rng, n, true);
        let (a, b) = (random_monomial(&mut rng, n), random_monomial(&mut rng, n));
        if mono_mul(&seed, &a, &b) != brute_force_product(&seed, &a, &b) {
            bad.push(i.to_string());
        }
    }
    rep.push(Check::new(format!("{pairs} random pairs"), bad.is_empty(), format!("failing pairs: {}", bad.join(","))));
    rep.finish(t)
}

/// Exponent at the node in position `j` of the flip context.
fn at(c: &FlipChain, a: &ExponentVector, j: usize) -> i64 {
    a.unit(c.seeds[0].idx(c.flip.context.v(j)).unwrap())
}

pub fn balancedness(s: &FlipSetup, opts: &Options) -> Report {
    let (mut rep, t) = Report::start(&suite(6));
    let (b, a) = (s.before(), s.after());
    for v in values(s) {
        for (side, r) in [("before", b.verify_trace_balanced(&v.before)), ("after", a.verify_trace_balanced(&v.after))] {
            rep.push(Check::new(format!("{} {side}", tag(s, &v)), r.balanced, if r.balanced { String::new() } else { r.to_string() }));
        }
    }
    for (name, sq, val) in loop_values() {
        let sf = Surface::new(&sq.tri, &sq.lab, &sq.seed);
        let r = sf.verify_trace_balanced(&val);
        rep.push(Check::new(name, r.balanced, if r.balanced { String::new() } else { r.to_string() }));
    }
    let c = &s.chain;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed ^ 6);
    let n = c.after_seed.len();
    let samples = opts.samples.max(1000);
    let mut bad = Vec::new();
    for i in 0..samples {
        let a_after = random_balanced(&c.flip.after, &c.after_labeling, n, 2, &mut rng);
        let alphas = c.alphas(&a_after);
        let p = c.pull_indices(&LaurentPoly::monomial(a_after));
        let e = p.terms().next().unwrap().0;
        let u = |j: usize| at(c, e, j);
        let bs = [
            u(1) + u(8) + u(12),
            u(2) + u(9) + u(7),
            u(5) + u(7) + u(10),
            u(6) + u(12) + u(11),
            u(1) + u(2),
            u(8) + u(9),
            u(7) + u(12),
            u(10) + u(11),
            u(5) + u(6),
            -u(3) + u(2) + u(8),
            -u(3) + u(9) + u(12),
            -u(3) + u(7) + u(1),
            -u(4) + u(6) + u(7),
            -u(4) + u(12) + u(10),
            -u(4) + u(11) + u(5),
        ];
        let bb = |k: usize| bs[k - 1];
        let closed = [
            u(2) + (-u(12) + u(4) + u(9)) - (-u(7) + u(3) + u(6)) - u(8),
            -u(5) - (-u(12) + u(4) + u(9)) + (-u(7) + u(3) + u(6)) + u(11),
            u(1) + u(4) - u(3) - u(6),
            u(3) + u(10) - u(4) - u(9),
        ];
        let via_b = [
            -bb(1) + bb(2) + bb(12) - bb(13),
            -bb(3) + bb(4) - bb(11) + bb(14),
            bb(12) - bb(13),
            -bb(11) + bb(14),
        ];
        let ok = bs.iter().all(|x| x % 3 == 0)
            && alphas.iter().all(|x| x.is_integer())
            && (0..4).all(|r| alphas[r] == ThirdInt::from_tripled(closed[r]) && closed[r] == via_b[r]);
        if !ok {
            bad.push(format!("sample {i}: {}", alphas.map(|x| x.to_string()).join(" ")));
        }
    }
    rep.push(Check::new(
        format!("mutation exponents integral with their closed forms on {samples} vectors"),
        bad.is_empty(),
        bad.into_iter().take(5).collect::<Vec<_>>().join("; "),
    ));
    rep.finish(t)
}

pub fn structure(s: &FlipSetup) -> Report {
    let (mut rep, t) = Report::start(&suite(7));
    let one = |n: usize| ClassicalPoly::monomial(1, ExponentVector::zeros(n));
    for (p, q) in &s.webs {
        let (b, a) = (s.before(), s.after());
        let ok = b.monodromy(p).determinant() == one(b.seed.len()) && a.monodromy(q).determinant() == one(a.seed.len());
        rep.push(Check::new(format!("{} determinant", p.id), ok, ""));
        let mut bad = Vec::new();
        for st in StatePair::all() {
            for (side, sf, path) in [("before", b, p), ("after", a, q)] {
                let v = sf.edge_trace(path, st).unwrap();
                let cl = sf.edge_terms(path, st).unwrap().classical();
                if star(&v) != v {
                    bad.push(format!("{st} {side} star"));
                }
                if classicalize(&weyl_quantize(&cl)) != cl {
                    bad.push(format!("{st} {side} cl(Wl)"));
                }
            }
            let lhs = b.edge_terms(p, st).unwrap().classical();
            let rhs = a.edge_terms(q, st).unwrap().classical();
            match s.chain.theta_classical(&rhs) {
                Ok(Some(x)) if x == lhs => {}
                Ok(Some(_)) => bad.push(format!("{st} classical limit differs")),
                Ok(None) => bad.push(format!("{st} classical limit not polynomial")),
                Err(e) => bad.push(format!("{st} classical limit: {e}")),
            }
        }
        rep.push(Check::new(format!("{} star, cl(Wl), classical limit", p.id), bad.is_empty(), bad.join(", ")));
    }
    for (name, sq, _) in loop_values() {
        let sf = Surface::new(&sq.tri, &sq.lab, &sq.seed);
        let det = sf.monodromy(&sq.path).determinant();
        rep.push(Check::new(format!("{name} determinant"), det == one(sq.seed.len()), ""));
    }
    rep.finish(t)
}

/// `i(Θ(x)) = Θ(i(x))` for a flip of `arc` and a cut along `along`.
pub struct CutFlip {
    pub chain: FlipChain,
    pub cut_chain: FlipChain,
    /// Cut node of `Δ` to node of `Δ`.
    glue_before: Vec<usize>,
    /// Cut node of `Δ'` to node of `Δ'`.
    glue_after: Vec<usize>,
    /// Node of the cut `Δ'` to node of the flipped cut `Δ`.
    after_ids: Vec<usize>,
}

impl CutFlip {
    pub fn new(tri: &Triangulation, arc: &str, along: &str) -> Result<Self> {
        let chain = FlipChain::new(flip(tri, arc)?)?;
        let cb = cut(tri, along)?;
        let cut_chain = FlipChain::new(flip(&cb.cut, arc)?)?;
        let glue_before = cb.index_map(&chain.seeds[0], &cut_chain.seeds[0]);
        let ca = cut(&chain.flip.after, along)?;
        let (ca_seed, _) = build_3triangulation_quiver(&ca.cut);
        let glue_after = ca.index_map(&chain.after_seed, &ca_seed);
        let after_ids = ca_seed.nodes().iter().map(|v| cut_chain.after_seed.idx(v)).collect::<Result<_>>()?;
        Ok(CutFlip { chain, cut_chain, glue_before, glue_after, after_ids })
    }

    /// Compares both composites on a polynomial over `Δ'`.
    pub fn check(&self, p: &LaurentPoly) -> Result<bool> {
        let (c, cc) = (&self.chain, &self.cut_chain);
        let from = c.after_torus();
        let lhs = c.theta_exact(&Element::from_laurent(&from, p), &from)?;
        let lhs = lhs.cut(&c.torus(0), &cc.torus(0), &self.glue_before);
        let cut_p = cutting_map(&self.glue_after, p).reindex(cc.after_seed.len(), &self.after_ids);
        let from_c = cc.after_torus();
        let rhs = cc.theta_exact(&Element::from_laurent(&from_c, &cut_p), &from_c)?;
        Ok(lhs.equals(&rhs, &cc.torus(0)))
    }
}

/// `i(Tr(W, s)) = sum_k Tr(W_1, (s1, k)) Tr(W_2, (k, s2))` for a web crossing the cut arc once.
pub fn cutting_axiom(s: &FlipSetup, web: usize, along: &str) -> Result<Vec<(StatePair, bool)>> {
    let tri = &s.chain.flip.before;
    let c = cut(tri, along)?;
    let (seed, lab) = build_3triangulation_quiver(&c.cut);
    let glue = c.index_map(s.seed(), &seed);
    let sf = Surface::new(&c.cut, &lab, &seed);
    let path = &s.webs[web].0;
    if path.steps.len() != 2 {
        return Err(Error::Web(format!("{}: must cross `{along}` once", path.id)));
    }
    let copies = [cut_copy(along, 1), cut_copy(along, 2)];
    let copy_in = |t: usize| -> Result<String> {
        c.cut.triangles()[t]
            .sides
            .iter()
            .find(|x| copies.contains(x))
            .cloned()
            .ok_or_else(|| Error::Web(format!("triangle does not border `{along}`")))
    };
    let (t1, t2) = (path.steps[0].triangle, path.steps[1].triangle);
    let w1 = WebPath::route(&c.cut, "first", path.enter_arc(tri), &copy_in(t1)?)?;
    let w2 = WebPath::route(&c.cut, "second", &copy_in(t2)?, path.exit_arc(tri))?;
    let before = s.before();
    let mut out = Vec::new();
    for st in StatePair::all() {
        let lhs = cutting_map(&glue, &before.edge_trace(path, st)?);
        let mut rhs = LaurentPoly::zero();
        for k in 1..=3 {
            let x = sf.edge_trace(&w1, StatePair::new(st.eps1, k)?)?;
            let y = sf.edge_trace(&w2, StatePair::new(k, st.eps2)?)?;
            rhs = poly_add(&rhs, &poly_mul(&seed, &x, &y));
        }
        out.push((st, lhs == rhs));
    }
    Ok(out)
}

pub fn cutting(s: &FlipSetup, opts: &Options) -> Report {
    let (mut rep, t) = Report::start(&suite(8));
    let pent = Triangulation::parse(fixtures::PENTAGON).expect("bundled data is valid");
    let res = CutFlip::new(&pent, "f", "g").and_then(|cf| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed ^ 8);
        let mut bad = Vec::new();
        for i in 0..opts.samples {
            let a = random_balanced(&cf.chain.flip.after, &cf.chain.after_labeling, cf.chain.after_seed.len(), 1, &mut rng);
            if !cf.check(&LaurentPoly::monomial(a))? {
                bad.push(i.to_string());
            }
        }
        Ok(bad)
    });
    rep.push(outcome(format!("pentagon, {} monomials", opts.samples), res, |bad| {
        (bad.is_empty(), format!("failing samples: {}", bad.join(",")))
    }));
    for id in ["case3", "case4", "case5", "case6"] {
        let res = s.web(id).and_then(|w| cutting_axiom(s, w, "d"));
        rep.push(outcome(format!("quadrilateral {id} state sum"), res, |v| {
            let bad: Vec<String> = v.iter().filter(|x| !x.1).map(|x| x.0.to_string()).collect();
            (bad.is_empty(), bad.join(" "))
        }));
    }
    rep.finish(t)
}

/// A loop around the puncture of a triangulated surface.
pub struct PeripheralLoop {
    pub tri: Triangulation,
    pub seed: Seed,
    pub lab: QuiverLabeling,
    pub path: WebPath,
}

impl PeripheralLoop {
    pub fn new(tri: Triangulation, turn: Turn) -> Result<Self> {
        let (seed, lab) = build_3triangulation_quiver(&tri);
        let v = tri.interior_vertices().into_iter().next().ok_or_else(|| Error::Web("no puncture".into()))?;
        let path = WebPath::peripheral("loop", &v, turn)?;
        Ok(PeripheralLoop { tri, seed, lab, path })
    }

    pub fn value(&self) -> Result<LaurentPoly> {
        Surface::new(&self.tri, &self.lab, &self.seed).loop_trace(&self.path)
    }
}

fn loop_values() -> Vec<(String, PeripheralLoop, LaurentPoly)> {
    let sq = Triangulation::parse(fixtures::PUNCTURED_SQUARE).expect("bundled data is valid");
    let mut out = Vec::new();
    for (name, tri) in [("square", sq.clone()), ("square flipped at s1", flip(&sq, "s1").unwrap().after)] {
        for turn in [Turn::Left, Turn::Right] {
            let l = PeripheralLoop::new(tri.clone(), turn).expect("bundled data is valid");
            let v = l.value().expect("closed uniform loop");
            out.push((format!("{name} loop {turn}"), l, v));
        }
    }
    out
}

pub fn peripheral() -> Report {
    let (mut rep, t) = Report::start(&suite(9));
    let sq = Triangulation::parse(fixtures::PUNCTURED_SQUARE).expect("bundled data is valid");
    let chain = FlipChain::new(flip(&sq, "s1").expect("s1 is internal")).expect("flip is regular");
    for turn in [Turn::Left, Turn::Right] {
        let res = (|| -> Result<Vec<Check>> {
            let before = PeripheralLoop::new(sq.clone(), turn)?;
            let after = PeripheralLoop::new(chain.flip.after.clone(), turn)?;
            let v = before.value()?;
            let mut out = Vec::new();
            let positive = v.len() == 3 && v.monomials().iter().all(|m| m.sign == 1 && m.omega == HalfInt::ZERO);
            out.push(Check::new(format!("{turn} loop has three positive terms"), positive, render(&before.seed, &v)));
            let h = peripheral_highest_term(&v)?;
            out.push(Check::new(format!("{turn} highest term has w-power 0"), h.omega == HalfInt::ZERO, ""));
            let h2 = peripheral_highest_term(&after.value()?)?;
            let image = is_laurent(&chain.theta(&h2.to_poly())?);
            let ok = image.as_ref() == Some(&h.to_poly());
            let detail = match image {
                Some(l) => expected_actual(&before.seed, &h.to_poly(), &l),
                None => "image has denominators".into(),
            };
            out.push(Check::new(format!("{turn} highest term compatible with the flip of s1"), ok, if ok { String::new() } else { detail }));
            Ok(out)
        })();
        match res {
            Ok(cs) => cs.into_iter().for_each(|c| rep.push(c)),
            Err(e) => rep.push(Check::new(format!("{turn} loop"), false, e.to_string())),
        }
    }
    rep.finish(t)
}
