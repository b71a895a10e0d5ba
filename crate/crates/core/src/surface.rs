//! Combinatorial triangulations, their 3-triangulation quivers, flips and cuts.
//!
//! Each arc `e` carries two nodes `e:1 -> e:2`, ordered clockwise as seen from
//! the triangle that orients it. Each triangle `t` carries a face node `t:t`.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::coeff::HalfInt;
use crate::error::{Error, Result};
use crate::qtorus::{ExponentVector, LaurentPoly, WeylMonomial};
use crate::quiver::{NodeId, Seed};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub id: String,
    /// Clockwise.
    pub sides: [String; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub id: String,
    pub boundary: bool,
    /// `(triangle index, side position)` for each incident side.
    pub slots: Vec<(usize, usize)>,
    /// Triangle in which `e:1 -> e:2` runs clockwise.
    pub oriented_by: usize,
}

/// A vertex class of triangle corners; corner `(t, a)` sits between sides `a` and `a+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub corners: Vec<(usize, usize)>,
    pub interior: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    triangles: Vec<Triangle>,
    arcs: Vec<Arc>,
    arc_index: HashMap<String, usize>,
    declared_punctures: Vec<(String, Vec<String>)>,
}

pub fn edge_node(arc: &str, k: u8) -> NodeId {
    format!("{arc}:{k}")
}

pub fn face_node(t: &str) -> NodeId {
    format!("{t}:t")
}

impl Triangulation {
    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: &str) -> Result<&Arc> {
        self.arc_index
            .get(id)
            .map(|&i| &self.arcs[i])
            .ok_or_else(|| Error::Triangulation(format!("unknown arc `{id}`")))
    }

    pub fn triangle_index(&self, id: &str) -> Result<usize> {
        self.triangles
            .iter()
            .position(|t| t.id == id)
            .ok_or_else(|| Error::Triangulation(format!("unknown triangle `{id}`")))
    }

    pub fn side_position(&self, t: usize, arc: &str) -> Option<usize> {
        self.triangles[t].sides.iter().position(|s| s == arc)
    }

    /// Edge nodes of side `pos` of triangle `t`, in that triangle's clockwise order.
    pub fn side_nodes(&self, t: usize, pos: usize) -> (NodeId, NodeId) {
        let id = &self.triangles[t].sides[pos];
        let arc = &self.arcs[self.arc_index[id]];
        if arc.oriented_by == t {
            (edge_node(id, 1), edge_node(id, 2))
        } else {
            (edge_node(id, 2), edge_node(id, 1))
        }
    }

    /// The other side slot glued to side `pos` of triangle `t`.
    pub fn across(&self, t: usize, pos: usize) -> Option<(usize, usize)> {
        let arc = &self.arcs[self.arc_index[&self.triangles[t].sides[pos]]];
        arc.slots.iter().copied().find(|&s| s != (t, pos))
    }

    pub fn parse(text: &str) -> Result<Triangulation> {
        let mut triangles = Vec::new();
        let mut boundary: Vec<(usize, String)> = Vec::new();
        let mut punctures = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "triangle" => {
                    let [_, id, a, b, c] = toks.as_slice() else {
                        return Err(Error::parse(ln + 1, "expected `triangle <id> <s1> <s2> <s3>`"));
                    };
                    triangles.push(Triangle {
                        id: id.to_string(),
                        sides: [a.to_string(), b.to_string(), c.to_string()],
                    });
                }
                "boundary" => boundary.extend(toks[1..].iter().map(|a| (ln + 1, a.to_string()))),
                "puncture" => {
                    if toks.len() < 3 || toks[2] != "incident" {
                        return Err(Error::parse(ln + 1, "expected `puncture <id> incident <arcs...>`"));
                    }
                    punctures.push((toks[1].to_string(), toks[3..].iter().map(|s| s.to_string()).collect()));
                }
                other => return Err(Error::parse(ln + 1, format!("unknown keyword `{other}`"))),
            }
        }
        let declared: BTreeSet<String> = boundary.iter().map(|(_, a)| a.clone()).collect();
        let t = Triangulation::assemble(triangles, None, punctures)?;
        for (ln, a) in &boundary {
            match t.arc_index.get(a) {
                None => return Err(Error::parse(*ln, format!("dangling boundary arc `{a}`"))),
                Some(&i) if !t.arcs[i].boundary => {
                    return Err(Error::parse(*ln, format!("arc `{a}` bounds two triangles")))
                }
                _ => {}
            }
        }
        for arc in &t.arcs {
            if arc.boundary && !declared.contains(&arc.id) {
                return Err(Error::Triangulation(format!(
                    "arc `{}` bounds one triangle but is not declared boundary",
                    arc.id
                )));
            }
        }
        Ok(t)
    }

    /// Validates incidence and regularity. `orient` pins arc orientations by triangle id.
    fn assemble(
        triangles: Vec<Triangle>,
        orient: Option<&HashMap<String, String>>,
        declared_punctures: Vec<(String, Vec<String>)>,
    ) -> Result<Triangulation> {
        if triangles.is_empty() {
            return Err(Error::Triangulation("no triangles".into()));
        }
        let mut ids = BTreeSet::new();
        for t in &triangles {
            if !ids.insert(t.id.clone()) {
                return Err(Error::Triangulation(format!("duplicate triangle `{}`", t.id)));
            }
        }
        let mut arcs: Vec<Arc> = Vec::new();
        let mut arc_index: HashMap<String, usize> = HashMap::new();
        for (ti, t) in triangles.iter().enumerate() {
            for (pos, s) in t.sides.iter().enumerate() {
                if t.sides.iter().filter(|x| *x == s).count() > 1 {
                    return Err(Error::Triangulation(format!(
                        "self-folded triangle `{}` uses arc `{s}` twice",
                        t.id
                    )));
                }
                let i = *arc_index.entry(s.clone()).or_insert_with(|| {
                    arcs.push(Arc { id: s.clone(), boundary: true, slots: vec![], oriented_by: ti });
                    arcs.len() - 1
                });
                arcs[i].slots.push((ti, pos));
            }
        }
        for arc in arcs.iter_mut() {
            match arc.slots.len() {
                1 => arc.boundary = true,
                2 => arc.boundary = false,
                n => {
                    return Err(Error::Triangulation(format!("arc `{}` bounds {n} triangle sides", arc.id)))
                }
            }
            if let Some(o) = orient.and_then(|m| m.get(&arc.id)) {
                arc.oriented_by = triangles.iter().position(|t| &t.id == o).unwrap();
            }
        }
        let t = Triangulation { triangles, arcs, arc_index, declared_punctures };
        for v in t.vertices() {
            if v.interior && v.corners.len() < 3 {
                return Err(Error::Triangulation(format!(
                    "puncture of valence {} at a corner of triangle `{}`",
                    v.corners.len(),
                    t.triangles[v.corners[0].0].id
                )));
            }
        }
        for (name, incident) in &t.declared_punctures {
            let mut want = incident.clone();
            want.sort();
            let found = t.vertices().into_iter().filter(|v| v.interior).any(|v| {
                let mut have: Vec<String> =
                    v.corners.iter().map(|&(ti, a)| t.triangles[ti].sides[(a + 1) % 3].clone()).collect();
                have.sort();
                have == want
            });
            if !found {
                return Err(Error::Triangulation(format!(
                    "declared puncture `{name}` does not match any interior vertex"
                )));
            }
        }
        Ok(t)
    }

    /// Vertex classes, corners listed in the order met when turning across `a+1`.
    pub fn vertices(&self) -> Vec<Vertex> {
        let n = self.triangles.len();
        let mut seen = vec![[false; 3]; n];
        let mut out = Vec::new();
        for t0 in 0..n {
            for a0 in 0..3 {
                if seen[t0][a0] {
                    continue;
                }
                // walk backwards to a boundary start if there is one
                let mut start = (t0, a0);
                let mut interior = true;
                loop {
                    let (t, a) = start;
                    match self.across(t, a) {
                        None => {
                            interior = false;
                            break;
                        }
                        Some((t2, b)) => {
                            let prev = (t2, (b + 2) % 3);
                            if prev == (t0, a0) {
                                break;
                            }
                            start = prev;
                        }
                    }
                }
                let mut corners = vec![start];
                let mut cur = start;
                loop {
                    let (t, a) = cur;
                    match self.across(t, (a + 1) % 3) {
                        None => break,
                        Some((t2, b)) => {
                            if (t2, b) == start {
                                break;
                            }
                            corners.push((t2, b));
                            cur = (t2, b);
                        }
                    }
                }
                for &(t, a) in &corners {
                    seen[t][a] = true;
                }
                out.push(Vertex { corners, interior });
            }
        }
        out
    }

    pub fn interior_vertices(&self) -> Vec<Vertex> {
        self.vertices().into_iter().filter(|v| v.interior).collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for t in &self.triangles {
            writeln!(out, "triangle {} {} {} {}", t.id, t.sides[0], t.sides[1], t.sides[2]).unwrap();
        }
        let bd: Vec<&str> = self.arcs.iter().filter(|a| a.boundary).map(|a| a.id.as_str()).collect();
        if !bd.is_empty() {
            writeln!(out, "boundary {}", bd.join(" ")).unwrap();
        }
        out
    }

    fn orientation_map(&self) -> HashMap<String, String> {
        self.arcs.iter().map(|a| (a.id.clone(), self.triangles[a.oriented_by].id.clone())).collect()
    }
}

/// Seed indices of the structured node labels.
#[derive(Clone, Debug)]
pub struct QuiverLabeling {
    pub edge: HashMap<String, [usize; 2]>,
    pub face: HashMap<String, usize>,
}

impl QuiverLabeling {
    pub fn edge_node(&self, arc: &str, k: u8) -> usize {
        self.edge[arc][usize::from(k - 1)]
    }

    pub fn face_node(&self, t: &str) -> usize {
        self.face[t]
    }

    /// Seed indices of side `pos` of triangle `t`, clockwise in `t`.
    pub fn side(&self, tri: &Triangulation, t: usize, pos: usize) -> (usize, usize) {
        let id = &tri.triangles[t].sides[pos];
        let [a, b] = self.edge[id];
        if tri.arcs[tri.arc_index[id]].oriented_by == t {
            (a, b)
        } else {
            (b, a)
        }
    }
}

/// Per triangle, with sides `e_1,e_2,e_3` clockwise and nodes `(e,1) -> (e,2)` clockwise:
/// face to `(e,1)` is `+1`, face to `(e,2)` is `-1`, `(e_a,2)` to `(e_{a+1},1)` is `-1`,
/// and `(e,1)` to `(e,2)` is `+1/2`.
pub fn build_3triangulation_quiver(tri: &Triangulation) -> (Seed, QuiverLabeling) {
    let mut nodes = Vec::new();
    let mut frozen = Vec::new();
    let mut edge = HashMap::new();
    let mut face = HashMap::new();
    for t in &tri.triangles {
        for s in &t.sides {
            if !edge.contains_key(s) {
                let b = tri.arc(s).unwrap().boundary;
                edge.insert(s.clone(), [nodes.len(), nodes.len() + 1]);
                nodes.push(edge_node(s, 1));
                nodes.push(edge_node(s, 2));
                frozen.extend([b, b]);
            }
        }
        face.insert(t.id.clone(), nodes.len());
        nodes.push(face_node(&t.id));
        frozen.push(false);
    }
    let lab = QuiverLabeling { edge, face };
    let mut seed = Seed::new(nodes, frozen).expect("node ids are unique by construction");
    let one = HalfInt::from_int(1);
    for (ti, t) in tri.triangles.iter().enumerate() {
        let f = lab.face[&t.id];
        let sides: Vec<(usize, usize)> = (0..3).map(|p| lab.side(tri, ti, p)).collect();
        for a in 0..3 {
            let (x1, x2) = sides[a];
            seed.add_eps(f, x1, one);
            seed.add_eps(f, x2, -one);
            seed.add_eps(x2, sides[(a + 1) % 3].0, -one);
            seed.add_eps(x1, x2, HalfInt::from_doubled(1));
        }
    }
    (seed, lab)
}

/// `b_ij = #{t : i clockwise next to j in t} - #{t : j clockwise next to i in t}`.
pub fn arc_adjacency_matrix(tri: &Triangulation) -> Vec<Vec<i64>> {
    let n = tri.arcs.len();
    let mut b = vec![vec![0i64; n]; n];
    for t in &tri.triangles {
        for a in 0..3 {
            let j = tri.arc_index[&t.sides[a]];
            let i = tri.arc_index[&t.sides[(a + 1) % 3]];
            b[i][j] += 1;
            b[j][i] -= 1;
        }
    }
    b
}

/// The twelve nodes around a flipped arc, `labels[j-1] = v_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipContext {
    pub arc: String,
    pub labels: [NodeId; 12],
}

impl FlipContext {
    pub fn v(&self, j: usize) -> &str {
        &self.labels[j - 1]
    }

    /// Mutation order, first to last.
    pub const SEQUENCE: [usize; 4] = [3, 4, 7, 12];
}

/// A flip `Δ -> Δ'` with the natural node identification.
#[derive(Clone, Debug)]
pub struct Flip {
    pub before: Triangulation,
    pub after: Triangulation,
    pub context: FlipContext,
    /// Node ids of `before` mapped to node ids of `after`.
    pub node_map: HashMap<NodeId, NodeId>,
}

impl Flip {
    /// `node_map` as seed indices.
    pub fn index_map(&self, before: &Seed, after: &Seed) -> Vec<usize> {
        before.nodes().iter().map(|v| after.idx(&self.node_map[v]).unwrap()).collect()
    }
}

pub fn flip(tri: &Triangulation, arc: &str) -> Result<Flip> {
    let k = tri.arc(arc)?;
    if k.boundary {
        return Err(Error::Flip(format!("`{arc}` is a boundary arc")));
    }
    let a = k.oriented_by;
    let (b, _) = *k.slots.iter().find(|s| s.0 != a).ok_or_else(|| {
        Error::Flip(format!("`{arc}` bounds the same triangle twice"))
    })?;
    let rot = |t: usize| -> [String; 3] {
        let p = tri.side_position(t, arc).unwrap();
        let s = &tri.triangles[t].sides;
        [s[p].clone(), s[(p + 1) % 3].clone(), s[(p + 2) % 3].clone()]
    };
    let [_, p56, r12] = rot(a);
    let [_, s89, u1011] = rot(b);
    let outer: BTreeSet<&String> = [&p56, &r12, &s89, &u1011].into_iter().collect();
    if outer.len() != 4 || outer.contains(&arc.to_string()) {
        return Err(Error::Flip(format!("context nodes around `{arc}` coincide")));
    }
    let pos = |t: usize, s: &str| tri.side_position(t, s).unwrap();
    let (v5, v6) = tri.side_nodes(a, pos(a, &p56));
    let (v1, v2) = tri.side_nodes(a, pos(a, &r12));
    let (v8, v9) = tri.side_nodes(b, pos(b, &s89));
    let (v10, v11) = tri.side_nodes(b, pos(b, &u1011));
    let ta = tri.triangles[a].id.clone();
    let tb = tri.triangles[b].id.clone();
    let context = FlipContext {
        arc: arc.to_string(),
        labels: [
            v1,
            v2,
            edge_node(arc, 1),
            edge_node(arc, 2),
            v5,
            v6,
            face_node(&ta),
            v8,
            v9,
            v10,
            v11,
            face_node(&tb),
        ],
    };

    let mut triangles = tri.triangles.clone();
    triangles[a].sides = [arc.to_string(), r12.clone(), s89.clone()];
    triangles[b].sides = [arc.to_string(), u1011.clone(), p56.clone()];
    let mut orient = tri.orientation_map();
    if orient[&p56] == ta {
        orient.insert(p56.clone(), tb.clone());
    }
    if orient[&s89] == tb {
        orient.insert(s89.clone(), ta.clone());
    }
    orient.insert(arc.to_string(), ta.clone());
    let after = Triangulation::assemble(triangles, Some(&orient), Vec::new())?;

    let (seed, _) = build_3triangulation_quiver(tri);
    let mut node_map: HashMap<NodeId, NodeId> = seed.nodes().iter().map(|v| (v.clone(), v.clone())).collect();
    node_map.insert(edge_node(arc, 1), face_node(&ta));
    node_map.insert(edge_node(arc, 2), face_node(&tb));
    node_map.insert(face_node(&ta), edge_node(arc, 2));
    node_map.insert(face_node(&tb), edge_node(arc, 1));
    Ok(Flip { before: tri.clone(), after, context, node_map })
}

/// Copy names of a cut arc: `.1` on the orienting side, `.2` on the other.
pub fn cut_copy(arc: &str, k: u8) -> String {
    format!("{arc}.{k}")
}

/// Cut along an internal arc.
#[derive(Clone, Debug)]
pub struct Cut {
    pub arc: String,
    pub cut: Triangulation,
    /// Node ids of the cut surface mapped to node ids of the original.
    pub glue: HashMap<NodeId, NodeId>,
}

pub fn cut(tri: &Triangulation, e: &str) -> Result<Cut> {
    let arc = tri.arc(e)?;
    if arc.boundary {
        return Err(Error::Triangulation(format!("cannot cut along boundary arc `{e}`")));
    }
    let (c1, c2) = (cut_copy(e, 1), cut_copy(e, 2));
    if tri.arc_index.contains_key(&c1) || tri.arc_index.contains_key(&c2) {
        return Err(Error::Triangulation(format!("arc names `{c1}`/`{c2}` already taken")));
    }
    let a = arc.oriented_by;
    let mut triangles = tri.triangles.clone();
    let mut orient = tri.orientation_map();
    orient.remove(e);
    for &(t, pos) in &arc.slots {
        let name = if t == a { c1.clone() } else { c2.clone() };
        triangles[t].sides[pos] = name.clone();
        orient.insert(name, triangles[t].id.clone());
    }
    let cut_tri = Triangulation::assemble(triangles, Some(&orient), Vec::new())?;
    let (seed, _) = build_3triangulation_quiver(&cut_tri);
    let mut glue: HashMap<NodeId, NodeId> = seed.nodes().iter().map(|v| (v.clone(), v.clone())).collect();
    glue.insert(edge_node(&c1, 1), edge_node(e, 1));
    glue.insert(edge_node(&c1, 2), edge_node(e, 2));
    glue.insert(edge_node(&c2, 1), edge_node(e, 2));
    glue.insert(edge_node(&c2, 2), edge_node(e, 1));
    Ok(Cut { arc: e.to_string(), cut: cut_tri, glue })
}

impl Cut {
    /// `glue` as seed indices, cut seed to original seed.
    pub fn index_map(&self, original: &Seed, cut_seed: &Seed) -> Vec<usize> {
        cut_seed.nodes().iter().map(|v| original.idx(&self.glue[v]).unwrap()).collect()
    }
}

/// Exponent at each cut node is the exponent at its image.
pub fn cutting_exponents(glue: &[usize], a: &ExponentVector) -> ExponentVector {
    ExponentVector::from_units(glue.iter().map(|&g| a.unit(g)).collect())
}

pub fn cutting_map_monomial(glue: &[usize], m: &WeylMonomial) -> WeylMonomial {
    WeylMonomial { sign: m.sign, omega: m.omega, exps: cutting_exponents(glue, &m.exps) }
}

pub fn cutting_map(glue: &[usize], p: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (e, c) in p.terms() {
        out.add_term(cutting_exponents(glue, e), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{mutate_quiver_at, seeds_equal};

    const QUAD: &str = "triangle L d a b\ntriangle R d c e\nboundary a b c e\n";

    #[test]
    fn quadrilateral_parses() {
        let t = Triangulation::parse(QUAD).unwrap();
        assert_eq!(t.arcs().len(), 5);
        assert!(!t.arc("d").unwrap().boundary);
        let (s, _) = build_3triangulation_quiver(&t);
        assert_eq!(s.len(), 12);
        let mutable: Vec<&str> = (0..12).filter(|&i| !s.is_frozen(i)).map(|i| s.node(i)).collect();
        assert_eq!(mutable, ["d:1", "d:2", "L:t", "R:t"]);
    }

    #[test]
    fn single_triangle_pattern() {
        let t = Triangulation::parse("triangle t a b c\nboundary a b c\n").unwrap();
        let (s, _) = build_3triangulation_quiver(&t);
        assert_eq!(s.len(), 7);
        let f = s.idx("t:t").unwrap();
        for a in ["a", "b", "c"] {
            let x1 = s.idx(&edge_node(a, 1)).unwrap();
            let x2 = s.idx(&edge_node(a, 2)).unwrap();
            assert_eq!(s.eps(f, x1), HalfInt::from_int(1));
            assert_eq!(s.eps(f, x2), HalfInt::from_int(-1));
            assert_eq!(s.eps(x1, x2), HalfInt::from_doubled(1));
        }
        let a2 = s.idx("a:2").unwrap();
        let b1 = s.idx("b:1").unwrap();
        assert_eq!(s.eps(a2, b1), HalfInt::from_int(-1));
    }

    #[test]
    fn valence_two_puncture_rejected() {
        let err = Triangulation::parse("triangle s x y a\ntriangle t y x b\nboundary a b\n");
        assert!(matches!(err, Err(Error::Triangulation(m)) if m.contains("valence 2")));
    }

    #[test]
    fn self_folded_rejected() {
        assert!(Triangulation::parse("triangle s x x a\nboundary a\n").is_err());
    }

    #[test]
    fn dangling_boundary_rejected() {
        assert!(Triangulation::parse("triangle t a b c\nboundary a b c z\n").is_err());
    }

    #[test]
    fn flip_matches_mutation_sequence() {
        let t = Triangulation::parse(QUAD).unwrap();
        let f = flip(&t, "d").unwrap();
        let (s0, _) = build_3triangulation_quiver(&t);
        let mut s = s0.clone();
        for j in FlipContext::SEQUENCE {
            s = mutate_quiver_at(&s, f.context.v(j)).unwrap();
        }
        let (s1, _) = build_3triangulation_quiver(&f.after);
        let map = f.index_map(&s0, &s1);
        let mut inv = vec![0; map.len()];
        for (i, &m) in map.iter().enumerate() {
            inv[m] = i;
        }
        for i in 0..12 {
            for j in 0..12 {
                assert_eq!(s.eps(i, j), s1.eps(map[i], map[j]), "{} {}", s.node(i), s.node(j));
            }
        }
        assert!(seeds_equal(&s0, &s0));
    }

    #[test]
    fn flip_at_boundary_rejected() {
        let t = Triangulation::parse(QUAD).unwrap();
        assert!(matches!(flip(&t, "a"), Err(Error::Flip(_))));
    }

    #[test]
    fn cut_quadrilateral() {
        let t = Triangulation::parse(QUAD).unwrap();
        let c = cut(&t, "d").unwrap();
        assert_eq!(c.cut.arcs().iter().filter(|a| a.boundary).count(), 6);
        let mut pre: HashMap<&str, usize> = HashMap::new();
        for v in c.glue.values() {
            *pre.entry(v).or_default() += 1;
        }
        for (v, n) in pre {
            assert_eq!(n == 2, v.starts_with("d:"), "{v}");
        }
    }
}
