//! Commands behind the `sl3qt` binary. Each returns its full text output so
//! the binary only handles arguments, files and exit codes.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::mutation::exact::{check_relation, Step};
use crate::mutation::{is_laurent, FlipChain};
use crate::qtorus::{classicalize, is_multiplicity_free, render, render_classical, render_latex, LaurentPoly};
use crate::quiver::{mutate_quiver_at, Seed};
use crate::surface::{build_3triangulation_quiver, Triangulation};
use crate::trace::{parse_webs, StatePair, Surface, WebPath};
use crate::verify::criteria::{relations, run, Options};
use crate::verify::{FlipSetup, Report};

/// Output style for polynomials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Render {
    #[default]
    Canonical,
    LatexLike,
}

impl Render {
    pub fn parse(s: &str) -> Result<Render> {
        match s {
            "canonical" => Ok(Render::Canonical),
            "latex-like" => Ok(Render::LatexLike),
            _ => Err(Error::Other(format!("unknown rendering `{s}`; use canonical or latex-like"))),
        }
    }
}

/// How a polynomial is printed: style, and whether `w` is set to 1 first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Style {
    pub render: Render,
    pub omega_one: bool,
}

impl Style {
    pub fn show(&self, seed: &Seed, p: &LaurentPoly) -> String {
        let latex = self.render == Render::LatexLike;
        match (self.omega_one, latex) {
            (true, _) => render_classical(seed, &classicalize(p), latex),
            (false, true) => render_latex(seed, p),
            (false, false) => render(seed, p),
        }
    }
}

/// Text of a command together with its verdict; `ok` is false only when a
/// verification inside the command failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

/// A seed file, or a triangulation whose quiver is taken as the seed.
pub fn load_seed(text: &str) -> Result<Seed> {
    let first = text.lines().map(|l| l.split('#').next().unwrap().trim()).find(|l| !l.is_empty());
    match first.and_then(|l| l.split_whitespace().next()) {
        Some("triangle") => Ok(build_3triangulation_quiver(&Triangulation::parse(text)?).0),
        _ => Seed::parse(text),
    }
}

/// Mutates at each node in turn and prints the final seed.
pub fn mutate(seed_text: &str, nodes: &[String]) -> Result<Outcome> {
    let mut seed = load_seed(seed_text)?;
    for v in nodes {
        seed = mutate_quiver_at(&seed, v)?;
    }
    Ok(Outcome::ok(seed.render()))
}

fn selected<'a>(webs: &'a [WebPath], only: Option<&str>) -> Result<Vec<&'a WebPath>> {
    match only {
        None => Ok(webs.iter().collect()),
        Some(id) => {
            let w = webs.iter().find(|w| w.id == id).ok_or_else(|| Error::Web(format!("unknown web `{id}`")))?;
            Ok(vec![w])
        }
    }
}

fn states(only: Option<StatePair>) -> Vec<StatePair> {
    only.map_or_else(|| StatePair::all().collect(), |s| vec![s])
}

/// Trace of every web, one line per state; loops print a single value.
pub fn trace(tri_text: &str, webs_text: &str, web: Option<&str>, state: Option<StatePair>, style: Style) -> Result<Outcome> {
    let tri = Triangulation::parse(tri_text)?;
    let (seed, lab) = build_3triangulation_quiver(&tri);
    let sf = Surface::new(&tri, &lab, &seed);
    let paths = parse_webs(webs_text)?.iter().map(|s| WebPath::resolve(s, &tri)).collect::<Result<Vec<_>>>()?;
    let mut out = String::new();
    for p in selected(&paths, web)? {
        if p.closed {
            writeln!(out, "{} loop {}", p.id, style.show(&seed, &sf.loop_trace(p)?)).unwrap();
            continue;
        }
        for s in states(state) {
            writeln!(out, "{} {s} {}", p.id, style.show(&seed, &sf.edge_trace(p, s)?)).unwrap();
        }
    }
    Ok(Outcome::ok(out))
}

/// Both sides of the flip for each web and state, with the exponent tables.
pub fn flip_check(
    tri_text: &str,
    arc: &str,
    webs_text: &str,
    web: Option<&str>,
    state: Option<StatePair>,
    style: Style,
) -> Result<Outcome> {
    let setup = FlipSetup::new(tri_text, arc, webs_text)?;
    let chain: &FlipChain = &setup.chain;
    let (before, after) = (setup.before(), setup.after());
    let seed = setup.seed();
    let mut out = String::new();
    let mut ok = true;
    for (i, (p, q)) in setup.webs.iter().enumerate() {
        if web.is_some_and(|id| id != p.id) {
            continue;
        }
        for s in states(state) {
            let lhs = before.edge_trace(p, s)?;
            let rhs = after.edge_trace(q, s)?;
            let theta = chain.theta(&rhs)?;
            let quantum = is_laurent(&theta).is_some_and(|t| t == lhs);
            let classical = chain.theta_classical(&classicalize(&rhs))?.is_some_and(|t| t == classicalize(&lhs));
            let step = chain.step_forward(&lhs)?;
            let laurent = is_laurent(&step).is_some_and(|l| is_multiplicity_free(&l));
            let pass = quantum && classical && laurent;
            ok &= pass;
            writeln!(out, "{} {s}: {}", p.id, if pass { "ok" } else { "FAIL" }).unwrap();
            writeln!(out, "  before      {}", style.show(seed, &lhs)).unwrap();
            writeln!(out, "  after       {}", style.show(&chain.after_seed, &rhs)).unwrap();
            match is_laurent(&theta) {
                Some(t) => writeln!(out, "  theta       {}", style.show(seed, &t)).unwrap(),
                None => writeln!(out, "  theta       {}", theta.render(seed)).unwrap(),
            }
            let cl = Style { omega_one: true, ..style };
            writeln!(out, "  at w=1      {}", cl.show(seed, &lhs)).unwrap();
            writeln!(out, "  classical   {}", if classical { "agrees" } else { "differs" }).unwrap();
            writeln!(out, "  two steps   {}", if laurent { "Laurent, multiplicity-free" } else { "not Laurent" }).unwrap();
        }
        out.push_str(&setup.step_one_table(i));
    }
    Ok(Outcome { text: out, ok })
}

/// Relation words. Tokens are node ids (mutate there) or `swap:v,w`; the
/// shortcuts `involution:v`, `square:v,w`, `pentagon:v,w` and `all` expand to
/// the standard words.
pub fn parse_relation(seed: &Seed, spec: &str) -> Result<Vec<(String, Vec<Step>)>> {
    let spec = spec.trim();
    if spec == "all" {
        return Ok(relations(seed));
    }
    let pair = |arg: &str| -> Result<(usize, usize)> {
        let (v, w) = arg.split_once(',').ok_or_else(|| Error::Other(format!("expected `v,w`, got `{arg}`")))?;
        Ok((seed.idx(v)?, seed.idx(w)?))
    };
    let swap = |v: usize, w: usize| {
        let mut p: Vec<usize> = (0..seed.len()).collect();
        p.swap(v, w);
        Step::Permute(p)
    };
    if let Some((kind, arg)) = spec.split_once(':') {
        let word = match kind {
            "involution" => {
                let v = seed.idx(arg)?;
                Some(vec![Step::Mutate(v), Step::Mutate(v)])
            }
            "square" => {
                let (v, w) = pair(arg)?;
                Some([v, w, v, w].map(Step::Mutate).to_vec())
            }
            "pentagon" => {
                let (v, w) = pair(arg)?;
                let mut word = [v, w, v, w, v].map(Step::Mutate).to_vec();
                word.push(swap(v, w));
                Some(word)
            }
            _ => None,
        };
        if let Some(word) = word {
            return Ok(vec![(spec.to_string(), word)]);
        }
    }
    let mut word = Vec::new();
    for tok in spec.split_whitespace() {
        word.push(match tok.strip_prefix("swap:") {
            Some(arg) => {
                let (v, w) = pair(arg)?;
                swap(v, w)
            }
            None => Step::Mutate(seed.idx(tok)?),
        });
    }
    if word.is_empty() {
        return Err(Error::Other("empty relation".into()));
    }
    Ok(vec![(spec.to_string(), word)])
}

/// Checks each relation on the generator images.
pub fn consistency(seed_text: &str, spec: &str) -> Result<Outcome> {
    let seed = load_seed(seed_text)?;
    let mut out = String::new();
    let mut ok = true;
    for (name, word) in parse_relation(&seed, spec)? {
        let holds = check_relation(&seed, &word)?;
        ok &= holds;
        writeln!(out, "{} {name}", if holds { "ok  " } else { "FAIL" }).unwrap();
    }
    Ok(Outcome { text: out, ok })
}

/// Trace values and exponent tables in the golden-file layout.
pub fn tables(tri_text: &str, arc: &str, webs_text: &str, web: Option<&str>) -> Result<Outcome> {
    let setup = FlipSetup::new(tri_text, arc, webs_text)?;
    let picked = match web {
        Some(id) => vec![setup.web(id)?],
        None => (0..setup.webs.len()).collect(),
    };
    Ok(Outcome::ok(picked.into_iter().map(|i| setup.golden_text(i)).collect()))
}

/// Runs the listed criteria (all when empty).
pub fn verify_all(opts: &Options, only: &[usize], verbose: bool) -> Result<Outcome> {
    if let Some(k) = only.iter().find(|&&k| !(1..=9).contains(&k)) {
        return Err(Error::Other(format!("no criterion {k}; choose 1..9")));
    }
    let ks: Vec<usize> = if only.is_empty() { (1..=9).collect() } else { only.to_vec() };
    let reports: Vec<Report> = ks.iter().map(|&k| run(k, opts)).collect();
    let mut out = String::new();
    for r in &reports {
        out.push_str(&r.render(verbose));
    }
    Ok(Outcome { text: out, ok: reports.iter().all(Report::passed) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::fixtures;

    #[test]
    fn relation_shortcuts_expand() {
        let seed = Seed::parse("node 1\nnode 2\neps 1 2 1\n").unwrap();
        let r = parse_relation(&seed, "pentagon:1,2").unwrap();
        assert_eq!(r[0].1.len(), 6);
        assert_eq!(parse_relation(&seed, "1 1").unwrap()[0].1, vec![Step::Mutate(0), Step::Mutate(0)]);
        assert!(parse_relation(&seed, "3").is_err());
    }

    #[test]
    fn triangulation_loads_as_seed() {
        let s = load_seed(fixtures::TRIANGLE).unwrap();
        assert_eq!(s.len(), 7);
    }
}
