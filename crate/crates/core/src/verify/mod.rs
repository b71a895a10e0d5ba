//! Reproducible checks over the bundled surfaces, grouped into reports.

pub mod criteria;

use std::fmt::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use crate::coeff::ThirdInt;
use crate::error::{Error, Result};
use crate::mutation::FlipChain;
use crate::qtorus::{render, weyl_quantize, ClassicalPoly, ExponentVector, LaurentPoly};
use crate::quiver::Seed;
use crate::surface::{flip, Triangulation};
use crate::trace::{parse_webs, StatePair, Surface, Terms, WebPath};

/// Inputs shipped with the crate.
pub mod fixtures {
    pub const QUADRILATERAL: &str = include_str!("../../data/quadrilateral.tri");
    pub const QUADRILATERAL_WEBS: &str = include_str!("../../data/quadrilateral.webs");
    pub const PENTAGON: &str = include_str!("../../data/pentagon.tri");
    pub const PUNCTURED_SQUARE: &str = include_str!("../../data/punctured_square.tri");
    pub const TRIANGLE: &str = include_str!("../../data/triangle.tri");
    pub const CANCELLATIONS: &str = include_str!("../../data/cancellations.txt");
}

/// One outcome inside a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl Report {
    fn start(suite: &str) -> (Report, Instant) {
        (Report { suite: suite.into(), checks: Vec::new(), elapsed: Duration::ZERO }, Instant::now())
    }

    fn finish(mut self, t: Instant) -> Report {
        self.elapsed = t.elapsed();
        self
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Failures first in full, then one summary line.
    pub fn render(&self, verbose: bool) -> String {
        let mut out = String::new();
        for c in &self.checks {
            if verbose || !c.pass {
                let tag = if c.pass { "ok  " } else { "FAIL" };
                if c.detail.is_empty() {
                    writeln!(out, "  {tag} {}", c.name).unwrap();
                } else {
                    writeln!(out, "  {tag} {}: {}", c.name, c.detail).unwrap();
                }
            }
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        writeln!(
            out,
            "{} {}: {}/{} checks passed",
            if failed == 0 { "PASS" } else { "FAIL" },
            self.suite,
            self.checks.len() - failed,
            self.checks.len()
        )
        .unwrap();
        out
    }
}

/// A triangulation, one flip of it, and webs drawn on both sides.
pub struct FlipSetup {
    pub chain: FlipChain,
    /// Each web over `Δ` together with its rerouting over `Δ'`.
    pub webs: Vec<(WebPath, WebPath)>,
}

impl FlipSetup {
    pub fn new(tri_text: &str, arc: &str, webs_text: &str) -> Result<Self> {
        let tri = Triangulation::parse(tri_text)?;
        let chain = FlipChain::new(flip(&tri, arc)?)?;
        let mut webs = Vec::new();
        for spec in parse_webs(webs_text)? {
            let before = WebPath::resolve(&spec, &tri)?;
            if before.closed {
                return Err(Error::Web(format!("{}: flip checks take open webs", spec.id)));
            }
            let after = WebPath::route(&chain.flip.after, &spec.id, before.enter_arc(&tri), before.exit_arc(&tri))?;
            webs.push((before, after));
        }
        Ok(FlipSetup { chain, webs })
    }

    pub fn quadrilateral() -> Self {
        FlipSetup::new(fixtures::QUADRILATERAL, "d", fixtures::QUADRILATERAL_WEBS).expect("bundled data is valid")
    }

    pub fn seed(&self) -> &Seed {
        &self.chain.seeds[0]
    }

    pub fn before(&self) -> Surface<'_> {
        Surface::new(&self.chain.flip.before, &self.chain.labeling, &self.chain.seeds[0])
    }

    pub fn after(&self) -> Surface<'_> {
        Surface::new(&self.chain.flip.after, &self.chain.after_labeling, &self.chain.after_seed)
    }

    pub fn web(&self, id: &str) -> Result<usize> {
        self.webs.iter().position(|w| w.0.id == id).ok_or_else(|| Error::Web(format!("unknown web `{id}`")))
    }

    /// Row label of a node: its position `j` in the flip context when it has one.
    pub fn label(&self, node: usize) -> String {
        let id = self.seed().node(node);
        match self.chain.flip.context.labels.iter().position(|l| l == id) {
            Some(j) => format!("a{}", j + 1),
            None => format!("a[{id}]"),
        }
    }

    /// Columns of the Step 1' table: every term of every nonzero entry.
    pub fn table_columns(&self, web: usize) -> Vec<(String, ExponentVector)> {
        let sf = self.before();
        let m = sf.monodromy(&self.webs[web].0);
        let mut cols = Vec::new();
        for s in StatePair::all() {
            let Terms(ts) = m.entry(s);
            for (k, (_, e)) in ts.iter().enumerate() {
                let name = if ts.len() > 1 { format!("{s}_{}", k + 1) } else { s.to_string() };
                cols.push((name, e.clone()));
            }
        }
        cols
    }

    /// Exponents of every term together with the two mutation exponents.
    pub fn step_one_table(&self, web: usize) -> String {
        let cols = self.table_columns(web);
        let mut rows: Vec<usize> = Vec::new();
        for f in self.before().factors(&self.webs[web].0) {
            for i in 0..3 {
                for (_, e) in &f.entries[i][i].0 {
                    for v in first_appearance(e) {
                        if !rows.contains(&v) {
                            rows.push(v);
                        }
                    }
                }
            }
        }
        let mut out = String::new();
        let head: Vec<&str> = cols.iter().map(|c| c.0.as_str()).collect();
        writeln!(out, "entry {}", head.join(" ")).unwrap();
        for v in rows {
            let vals: Vec<String> = cols.iter().map(|c| c.1.third(v).to_string()).collect();
            writeln!(out, "{} {}", self.label(v), vals.join(" ")).unwrap();
        }
        let alphas: Vec<[ThirdInt; 2]> = cols.iter().map(|c| self.chain.step_alphas(&c.1)).collect();
        for (k, name) in ["alpha", "alpha'"].iter().enumerate() {
            let vals: Vec<String> = alphas.iter().map(|a| a[k].to_string()).collect();
            writeln!(out, "{name} {}", vals.join(" ")).unwrap();
        }
        out
    }

    /// Trace values and the Step 1' table of one web, as stored in golden files.
    pub fn golden_text(&self, web: usize) -> String {
        let (before, _) = &self.webs[web];
        let sf = self.before();
        let mut out = String::new();
        writeln!(out, "{}", before.spec(sf.tri).render()).unwrap();
        for s in StatePair::all() {
            let v = sf.edge_trace(before, s).expect("open web");
            writeln!(out, "trace {s} {}", render(self.seed(), &v)).unwrap();
        }
        out.push_str(&self.step_one_table(web));
        out
    }
}

/// Nodes of a single-factor exponent in the order they are written: for a
/// diagonal entry `Z_x Z_y^2` that is `x` first.
fn first_appearance(e: &ExponentVector) -> Vec<usize> {
    let mut nz: Vec<usize> = (0..e.len()).filter(|&i| e.unit(i) != 0).collect();
    // written as Z_x^{±1} Z_y^{...}; the unit-magnitude one comes first unless both are
    nz.sort_by_key(|&i| (e.unit(i).abs() != 1, i));
    nz
}

pub fn classical_one(n: usize) -> ClassicalPoly {
    ClassicalPoly::monomial(1, ExponentVector::zeros(n))
}

pub fn wl(p: &ClassicalPoly) -> LaurentPoly {
    weyl_quantize(p)
}

/// Compares `actual` against `dir/name`, or rewrites the file when `regen` is set.
pub fn golden_check(dir: &Path, name: &str, actual: &str, regen: bool) -> Check {
    let path = dir.join(name);
    if regen {
        let res = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, actual));
        return match res {
            Ok(()) => Check::new(format!("golden {name}"), true, "rewritten"),
            Err(e) => Check::new(format!("golden {name}"), false, format!("cannot write {}: {e}", path.display())),
        };
    }
    match std::fs::read_to_string(&path) {
        Err(e) => Check::new(format!("golden {name}"), false, format!("cannot read {}: {e}", path.display())),
        Ok(expected) if expected == actual => Check::new(format!("golden {name}"), true, ""),
        Ok(expected) => Check::new(format!("golden {name}"), false, diff(&expected, actual)),
    }
}

/// First differing line of two texts.
fn diff(expected: &str, actual: &str) -> String {
    let e: Vec<&str> = expected.lines().collect();
    let a: Vec<&str> = actual.lines().collect();
    for i in 0..e.len().max(a.len()) {
        let x = e.get(i).copied().unwrap_or("<missing>");
        let y = a.get(i).copied().unwrap_or("<missing>");
        if x != y {
            return format!("line {}:\n    expected: {x}\n    actual:   {y}", i + 1);
        }
    }
    "trailing newline differs".into()
}
