//! Trace values of simple oriented edges and peripheral loops.
//!
//! A web is a sequence of triangle crossings. Its classical monodromy is
//! `D_in · T_1 · D_1 · T_2 · ... · T_k · D_k`, where `T_i` is the turn matrix of
//! the `i`-th triangle and `D_i` the diagonal matrix of the arc crossed when
//! leaving it. Quantum values are the Weyl-ordered entries.

use std::collections::VecDeque;
use std::fmt;

use crate::balance::{is_delta_balanced, BalanceReport};
use crate::coeff::OmegaPoly;
use crate::error::{Error, Result};
use crate::qtorus::{
    highest_term, poly_add, poly_mul, weyl_quantize, ClassicalPoly, ExponentVector, LaurentPoly, WeylMonomial,
};
use crate::quiver::Seed;
use crate::surface::{QuiverLabeling, Triangulation, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Turn {
    Left,
    Right,
}

impl Turn {
    fn parse(s: &str) -> Option<Turn> {
        match s {
            "L" | "l" | "left" => Some(Turn::Left),
            "R" | "r" | "right" => Some(Turn::Right),
            _ => None,
        }
    }

    /// Exit side position for a given entry side position.
    pub fn exit(self, entry: usize) -> usize {
        match self {
            Turn::Left => (entry + 1) % 3,
            Turn::Right => (entry + 2) % 3,
        }
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Turn::Left => "L",
            Turn::Right => "R",
        })
    }
}

/// A web as written in a web file, before it is checked against a triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebSpec {
    pub id: String,
    /// `None` for closed loops.
    pub enter: Option<String>,
    pub hops: Vec<(String, Turn)>,
    pub exit: Option<String>,
}

impl WebSpec {
    pub fn closed(&self) -> bool {
        self.enter.is_none()
    }

    pub fn render(&self) -> String {
        let mut out = match &self.enter {
            Some(a) => format!("web {} enter {a}", self.id),
            None => format!("loop {}", self.id),
        };
        for (t, turn) in &self.hops {
            out.push_str(&format!(" triangle {t} turn {turn}"));
        }
        match &self.exit {
            Some(a) => out.push_str(&format!(" exit {a}")),
            None => out.push_str(" closed"),
        }
        out
    }
}

/// Parses `web <id> enter <arc> [triangle <t> turn <L|R>]+ exit <arc>` and
/// `loop <id> [triangle <t> turn <L|R>]+ closed`, one per line.
pub fn parse_webs(text: &str) -> Result<Vec<WebSpec>> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let err = |m: &str| Error::parse(ln + 1, m.to_string());
        let (closed, id) = match toks.as_slice() {
            ["web", id, ..] => (false, id.to_string()),
            ["loop", id, ..] => (true, id.to_string()),
            _ => return Err(err("expected `web` or `loop`")),
        };
        let mut rest = &toks[2..];
        let enter = if closed {
            None
        } else {
            match rest {
                ["enter", a, tail @ ..] => {
                    rest = tail;
                    Some(a.to_string())
                }
                _ => return Err(err("expected `enter <arc>`")),
            }
        };
        let mut hops = Vec::new();
        while let ["triangle", t, "turn", d, tail @ ..] = rest {
            let turn = Turn::parse(d).ok_or_else(|| err("turn must be L or R"))?;
            hops.push((t.to_string(), turn));
            rest = tail;
        }
        if hops.is_empty() {
            return Err(err("a web crosses at least one triangle"));
        }
        let exit = match (closed, rest) {
            (true, ["closed"]) => None,
            (false, ["exit", a]) => Some(a.to_string()),
            (true, _) => return Err(err("expected `closed`")),
            (false, _) => return Err(err("expected `exit <arc>`")),
        };
        out.push(WebSpec { id, enter, hops, exit });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WebStep {
    pub triangle: usize,
    pub entry: usize,
    pub exit: usize,
    pub turn: Turn,
}

/// A web checked against a triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebPath {
    pub id: String,
    pub steps: Vec<WebStep>,
    pub closed: bool,
}

impl WebPath {
    pub fn resolve(spec: &WebSpec, tri: &Triangulation) -> Result<WebPath> {
        let bad = |m: String| Error::Web(format!("{}: {m}", spec.id));
        let tris: Vec<usize> = spec.hops.iter().map(|(t, _)| tri.triangle_index(t)).collect::<Result<_>>()?;
        let mut entry = match &spec.enter {
            Some(a) => {
                let arc = tri.arc(a)?;
                if !arc.boundary {
                    return Err(bad(format!("enters through internal arc `{a}`")));
                }
                tri.side_position(tris[0], a)
                    .ok_or_else(|| bad(format!("`{a}` is not a side of `{}`", spec.hops[0].0)))?
            }
            None => {
                let last = tris.len() - 1;
                let (t, turn) = (tris[last], spec.hops[last].1);
                // the side crossed into the first triangle
                let mut found = None;
                for e in 0..3 {
                    if let Some((t2, p)) = tri.across(t, turn.exit(e)) {
                        if t2 == tris[0] {
                            found = Some(p);
                        }
                    }
                }
                found.ok_or_else(|| bad("loop does not close up".into()))?
            }
        };
        let mut steps = Vec::new();
        for (i, (&t, (_, turn))) in tris.iter().zip(&spec.hops).enumerate() {
            let exit = turn.exit(entry);
            steps.push(WebStep { triangle: t, entry, exit, turn: *turn });
            let last = i + 1 == tris.len();
            match tri.across(t, exit) {
                Some((t2, p)) if !last => {
                    if t2 != tris[i + 1] {
                        return Err(bad(format!(
                            "leaving `{}` through `{}` does not reach `{}`",
                            spec.hops[i].0,
                            tri.triangles()[t].sides[exit],
                            spec.hops[i + 1].0
                        )));
                    }
                    entry = p;
                }
                Some((t2, p)) if spec.closed() => {
                    if (t2, p) != (tris[0], steps[0].entry) {
                        return Err(bad("loop does not close up".into()));
                    }
                }
                None if !last || spec.closed() => {
                    return Err(bad(format!("leaves through boundary arc `{}`", tri.triangles()[t].sides[exit])))
                }
                _ => {}
            }
        }
        if let Some(x) = &spec.exit {
            let last = steps.last().unwrap();
            let got = &tri.triangles()[last.triangle].sides[last.exit];
            if got != x {
                return Err(bad(format!("exits through `{got}`, not `{x}`")));
            }
            if !tri.arc(x)?.boundary {
                return Err(bad(format!("exits through internal arc `{x}`")));
            }
        }
        Ok(WebPath { id: spec.id.clone(), steps, closed: spec.closed() })
    }

    /// The simple edge from boundary arc `enter` to boundary arc `exit`, along the
    /// unique dual path in a polygon.
    pub fn route(tri: &Triangulation, id: &str, enter: &str, exit: &str) -> Result<WebPath> {
        let a = tri.arc(enter)?;
        let b = tri.arc(exit)?;
        if !a.boundary || !b.boundary {
            return Err(Error::Web(format!("{id}: endpoints must lie on boundary arcs")));
        }
        let (t0, p0) = a.slots[0];
        let (t1, _) = b.slots[0];
        let n = tri.triangles().len();
        let mut prev: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[t0] = true;
        let mut queue = VecDeque::from([t0]);
        while let Some(t) = queue.pop_front() {
            for p in 0..3 {
                if let Some((t2, _)) = tri.across(t, p) {
                    if !seen[t2] {
                        seen[t2] = true;
                        prev[t2] = Some(t);
                        queue.push_back(t2);
                    }
                }
            }
        }
        if !seen[t1] {
            return Err(Error::Web(format!("{id}: `{enter}` and `{exit}` are not connected")));
        }
        let mut chain = vec![t1];
        while let Some(t) = prev[*chain.last().unwrap()] {
            chain.push(t);
        }
        chain.reverse();
        let mut steps = Vec::new();
        let mut entry = p0;
        for (i, &t) in chain.iter().enumerate() {
            let exit = if i + 1 < chain.len() {
                let next = chain[i + 1];
                (0..3).find(|&p| tri.across(t, p).map(|x| x.0) == Some(next)).unwrap()
            } else {
                tri.side_position(t, exit).unwrap()
            };
            let turn = if Turn::Left.exit(entry) == exit {
                Turn::Left
            } else if Turn::Right.exit(entry) == exit {
                Turn::Right
            } else {
                return Err(Error::Web(format!("{id}: enters and exits `{}` through one side", tri.triangles()[t].id)));
            };
            steps.push(WebStep { triangle: t, entry, exit, turn });
            if i + 1 < chain.len() {
                entry = tri.across(t, exit).unwrap().1;
            }
        }
        Ok(WebPath { id: id.to_string(), steps, closed: false })
    }

    /// The loop around an interior vertex turning always to one side.
    pub fn peripheral(id: &str, vertex: &Vertex, turn: Turn) -> Result<WebPath> {
        if !vertex.interior {
            return Err(Error::Web(format!("{id}: peripheral loops need an interior vertex")));
        }
        // corner (t, a) lies between sides a and a+1; the list crosses a+1 forward
        let mut steps: Vec<WebStep> = vertex
            .corners
            .iter()
            .map(|&(t, a)| {
                let (entry, exit) = match turn {
                    Turn::Left => (a, (a + 1) % 3),
                    Turn::Right => ((a + 1) % 3, a),
                };
                WebStep { triangle: t, entry, exit, turn }
            })
            .collect();
        if turn == Turn::Right {
            steps.reverse();
        }
        Ok(WebPath { id: id.to_string(), steps, closed: true })
    }

    pub fn spec(&self, tri: &Triangulation) -> WebSpec {
        let side = |s: &WebStep, p: usize| tri.triangles()[s.triangle].sides[p].clone();
        WebSpec {
            id: self.id.clone(),
            enter: (!self.closed).then(|| side(&self.steps[0], self.steps[0].entry)),
            hops: self.steps.iter().map(|s| (tri.triangles()[s.triangle].id.clone(), s.turn)).collect(),
            exit: (!self.closed).then(|| {
                let l = self.steps.last().unwrap();
                side(l, l.exit)
            }),
        }
    }

    pub fn enter_arc<'a>(&self, tri: &'a Triangulation) -> &'a str {
        &tri.triangles()[self.steps[0].triangle].sides[self.steps[0].entry]
    }

    pub fn exit_arc<'a>(&self, tri: &'a Triangulation) -> &'a str {
        let l = self.steps.last().unwrap();
        &tri.triangles()[l.triangle].sides[l.exit]
    }
}

/// States at the initial and terminal endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StatePair {
    pub eps1: u8,
    pub eps2: u8,
}

impl StatePair {
    pub fn new(eps1: u8, eps2: u8) -> Result<Self> {
        if !(1..=3).contains(&eps1) || !(1..=3).contains(&eps2) {
            return Err(Error::Web(format!("states must lie in 1..3, got ({eps1},{eps2})")));
        }
        Ok(StatePair { eps1, eps2 })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Web(format!("expected `e1,e2`, got `{s}`"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        StatePair::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
    }

    pub fn all() -> impl Iterator<Item = StatePair> {
        (1..=3).flat_map(|a| (1..=3).map(move |b| StatePair { eps1: a, eps2: b }))
    }

    fn ix(self) -> (usize, usize) {
        (usize::from(self.eps1 - 1), usize::from(self.eps2 - 1))
    }
}

impl fmt::Display for StatePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.eps1, self.eps2)
    }
}

/// Classical sum that remembers the order in which its terms were produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Terms(pub Vec<(i64, ExponentVector)>);

impl Terms {
    fn mono(n: usize, parts: &[(usize, i64)]) -> Terms {
        let mut e = ExponentVector::zeros(n);
        for &(v, k) in parts {
            e.units_mut()[v] += k;
        }
        Terms(vec![(1, e)])
    }

    fn concat(mut self, o: Terms) -> Terms {
        self.0.extend(o.0);
        self
    }

    fn mul(&self, o: &Terms) -> Terms {
        let mut out = Vec::new();
        for (c, a) in &self.0 {
            for (d, b) in &o.0 {
                out.push((c * d, a + b));
            }
        }
        Terms(out)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn classical(&self) -> ClassicalPoly {
        let mut p = ClassicalPoly::zero();
        for (c, e) in &self.0 {
            p.add_term(e.clone(), *c);
        }
        p
    }
}

/// `3 x 3` matrix of ordered classical sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceMatrix {
    pub entries: [[Terms; 3]; 3],
}

impl TraceMatrix {
    fn diagonal(d: [Terms; 3]) -> TraceMatrix {
        let [a, b, c] = d;
        TraceMatrix {
            entries: [
                [a, Terms::default(), Terms::default()],
                [Terms::default(), b, Terms::default()],
                [Terms::default(), Terms::default(), c],
            ],
        }
    }

    pub fn mul(&self, o: &TraceMatrix) -> TraceMatrix {
        let entry = |i: usize, j: usize| {
            (0..3).fold(Terms::default(), |acc, k| acc.concat(self.entries[i][k].mul(&o.entries[k][j])))
        };
        TraceMatrix { entries: std::array::from_fn(|i| std::array::from_fn(|j| entry(i, j))) }
    }

    pub fn entry(&self, s: StatePair) -> &Terms {
        let (i, j) = s.ix();
        &self.entries[i][j]
    }

    pub fn classical(&self) -> [[ClassicalPoly; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.entries[i][j].classical()))
    }

    pub fn determinant(&self) -> ClassicalPoly {
        let m = self.classical();
        let mut det = ClassicalPoly::zero();
        for (p, sign) in [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 0, 2], -1)] {
            let mut t = m[0][p[0]].mul(&m[1][p[1]]).mul(&m[2][p[2]]);
            if sign < 0 {
                t = negate(&t);
            }
            det = det.add(&t);
        }
        det
    }

    pub fn trace(&self) -> ClassicalPoly {
        let m = self.classical();
        m[0][0].add(&m[1][1]).add(&m[2][2])
    }
}

fn negate(p: &ClassicalPoly) -> ClassicalPoly {
    let mut out = ClassicalPoly::zero();
    for (e, c) in p.terms() {
        out.add_term(e.clone(), -c);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    In,
    Out,
}

/// Diagonal matrix of an arc at an endpoint or crossing. `first`/`second` are the
/// arc's nodes in clockwise order for the triangle being entered or left.
pub fn edge_side_matrix(n: usize, first: usize, second: usize, dir: Direction) -> TraceMatrix {
    let (x, y) = match dir {
        Direction::In => (second, first),
        Direction::Out => (first, second),
    };
    // units are thirds of X, i.e. single Z-powers
    TraceMatrix::diagonal([
        Terms::mono(n, &[(x, 1), (y, 2)]),
        Terms::mono(n, &[(x, 1), (y, -1)]),
        Terms::mono(n, &[(x, -2), (y, -1)]),
    ])
}

/// Upper triangular for a left turn, lower triangular for a right turn.
pub fn turn_matrix(n: usize, face: usize, turn: Turn) -> TraceMatrix {
    let z = |k: i64| Terms::mono(n, &[(face, k)]);
    let o = Terms::default;
    let entries = match turn {
        Turn::Left => [
            [z(2), z(2).concat(z(-1)), z(-1)],
            [o(), z(-1), z(-1)],
            [o(), o(), z(-1)],
        ],
        Turn::Right => [
            [z(1), o(), o()],
            [z(1), z(1), o()],
            [z(1), z(1).concat(z(-2)), z(-2)],
        ],
    };
    TraceMatrix { entries }
}

/// The labelled triangulation a web lives on.
#[derive(Clone, Copy, Debug)]
pub struct Surface<'a> {
    pub tri: &'a Triangulation,
    pub labeling: &'a QuiverLabeling,
    pub seed: &'a Seed,
}

impl<'a> Surface<'a> {
    pub fn new(tri: &'a Triangulation, labeling: &'a QuiverLabeling, seed: &'a Seed) -> Self {
        Surface { tri, labeling, seed }
    }

    fn n(&self) -> usize {
        self.seed.len()
    }

    fn side(&self, t: usize, pos: usize) -> (usize, usize) {
        self.labeling.side(self.tri, t, pos)
    }

    fn face(&self, t: usize) -> usize {
        self.labeling.face_node(&self.tri.triangles()[t].id)
    }

    /// Factors of the monodromy in order.
    pub fn factors(&self, path: &WebPath) -> Vec<TraceMatrix> {
        let mut out = Vec::new();
        if !path.closed {
            let s = path.steps[0];
            let (a, b) = self.side(s.triangle, s.entry);
            out.push(edge_side_matrix(self.n(), a, b, Direction::In));
        }
        for s in &path.steps {
            out.push(turn_matrix(self.n(), self.face(s.triangle), s.turn));
            let (a, b) = self.side(s.triangle, s.exit);
            out.push(edge_side_matrix(self.n(), a, b, Direction::Out));
        }
        out
    }

    pub fn monodromy(&self, path: &WebPath) -> TraceMatrix {
        let f = self.factors(path);
        f[1..].iter().fold(f[0].clone(), |acc, m| acc.mul(m))
    }

    /// Ordered classical terms of the `(ε1, ε2)` entry.
    pub fn edge_terms(&self, path: &WebPath, s: StatePair) -> Result<Terms> {
        if path.closed {
            return Err(Error::Web(format!("{}: closed webs have no states", path.id)));
        }
        Ok(self.monodromy(path).entry(s).clone())
    }

    pub fn edge_trace(&self, path: &WebPath, s: StatePair) -> Result<LaurentPoly> {
        Ok(weyl_quantize(&self.edge_terms(path, s)?.classical()))
    }

    /// Single-triangle value computed as a quantum matrix product, then Weyl-normalized.
    pub fn single_triangle_trace(&self, t: usize, entry: usize, turn: Turn, s: StatePair) -> LaurentPoly {
        let path = WebPath {
            id: String::new(),
            steps: vec![WebStep { triangle: t, entry, exit: turn.exit(entry), turn }],
            closed: false,
        };
        let mats: Vec<[[LaurentPoly; 3]; 3]> = self
            .factors(&path)
            .iter()
            .map(|m| std::array::from_fn(|i| std::array::from_fn(|j| weyl_quantize(&m.entries[i][j].classical()))))
            .collect();
        let mut acc = mats[0].clone();
        for m in &mats[1..] {
            acc = std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    (0..3).fold(LaurentPoly::zero(), |sum, k| poly_add(&sum, &poly_mul(self.seed, &acc[i][k], &m[k][j])))
                })
            });
        }
        let (i, j) = s.ix();
        weyl_normalize(&acc[i][j])
    }

    /// `sum_ε Wl(prod of the ε-th diagonal entries)` over a uniform-turn loop.
    pub fn loop_trace(&self, path: &WebPath) -> Result<LaurentPoly> {
        if !path.closed {
            return Err(Error::Web(format!("{}: not a closed loop", path.id)));
        }
        let turn = path.steps[0].turn;
        if path.steps.iter().any(|s| s.turn != turn) {
            return Err(Error::Web(format!("{}: loops must turn to one side only", path.id)));
        }
        let f = self.factors(path);
        let mut out = LaurentPoly::zero();
        for k in 0..3 {
            let mut e = ExponentVector::zeros(self.n());
            for m in &f {
                let d = &m.entries[k][k].0;
                debug_assert_eq!(d.len(), 1);
                e = &e + &d[0].1;
            }
            out = poly_add(&out, &LaurentPoly::monomial(e));
        }
        Ok(out)
    }

    pub fn verify_trace_balanced(&self, p: &LaurentPoly) -> BalanceReport {
        let mut failures = Vec::new();
        for (e, _) in p.terms() {
            for f in is_delta_balanced(self.tri, self.labeling, e).failures {
                if !failures.contains(&f) {
                    failures.push(f);
                }
            }
        }
        BalanceReport { balanced: failures.is_empty(), failures }
    }
}

/// Every coefficient replaced by its value at `w = 1`: the Weyl-ordered form of
/// a product whose classical terms are distinct.
pub fn weyl_normalize(p: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (e, c) in p.terms() {
        out.add_term(e.clone(), &OmegaPoly::constant(c.eval_at_one()));
    }
    out
}

/// The dominant term of a loop value.
pub fn peripheral_highest_term(p: &LaurentPoly) -> Result<WeylMonomial> {
    highest_term(p).ok_or_else(|| Error::Other("loop value has no dominant term".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qtorus::{classicalize, render};
    use crate::surface::build_3triangulation_quiver;

    const QUAD: &str = "triangle L d a b\ntriangle R d c e\nboundary a b c e\n";

    fn setup() -> (Triangulation, Seed, QuiverLabeling) {
        let t = Triangulation::parse(QUAD).unwrap();
        let (s, l) = build_3triangulation_quiver(&t);
        (t, s, l)
    }

    fn web(t: &Triangulation, line: &str) -> WebPath {
        WebPath::resolve(&parse_webs(line).unwrap()[0], t).unwrap()
    }

    #[test]
    fn one_left_turn() {
        let (t, s, l) = setup();
        let sf = Surface::new(&t, &l, &s);
        let w = web(&t, "web one enter a triangle L turn L exit b");
        let v = sf.edge_trace(&w, StatePair::new(1, 1).unwrap()).unwrap();
        assert_eq!(render(&s, &v), "+w^{0} Xa:1^{2/3} Xa:2^{1/3} Xb:1^{1/3} Xb:2^{2/3} XL:t^{2/3}");
        assert!(sf.edge_trace(&w, StatePair::new(2, 1).unwrap()).unwrap().is_zero());
        let ab = sf.edge_terms(&w, StatePair::new(1, 2).unwrap()).unwrap();
        assert_eq!(ab.0.len(), 2);
    }

    #[test]
    fn single_triangle_agrees() {
        let (t, s, l) = setup();
        let sf = Surface::new(&t, &l, &s);
        for turn in [Turn::Left, Turn::Right] {
            let w = WebPath {
                id: "x".into(),
                steps: vec![WebStep { triangle: 0, entry: 1, exit: turn.exit(1), turn }],
                closed: false,
            };
            for st in StatePair::all() {
                assert_eq!(sf.single_triangle_trace(0, 1, turn, st), sf.edge_trace(&w, st).unwrap(), "{st}");
            }
        }
    }

    #[test]
    fn route_matches_written_path() {
        let (t, _, _) = setup();
        let w = web(&t, "web x enter b triangle L turn L triangle R turn R exit e");
        assert_eq!(WebPath::route(&t, "x", "b", "e").unwrap(), w);
    }

    #[test]
    fn inconsistent_path_rejected() {
        let (t, _, _) = setup();
        let spec = &parse_webs("web x enter a triangle L turn R triangle R turn L exit e").unwrap()[0];
        assert!(WebPath::resolve(spec, &t).is_err());
    }

    #[test]
    fn unit_determinants() {
        let (t, s, l) = setup();
        let sf = Surface::new(&t, &l, &s);
        let w = web(&t, "web x enter b triangle L turn L triangle R turn R exit e");
        let one = ClassicalPoly::monomial(1, ExponentVector::zeros(s.len()));
        for m in sf.factors(&w) {
            assert_eq!(m.determinant(), one);
        }
        assert_eq!(sf.monodromy(&w).determinant(), one);
        let v = sf.edge_trace(&w, StatePair::new(1, 1).unwrap()).unwrap();
        assert_eq!(classicalize(&v), sf.monodromy(&w).classical()[0][0]);
    }
}
