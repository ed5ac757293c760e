//! Alternating paths, circuits, ears and arcs relative to a matching.
//!
//! Every structure here is certified on construction: an [`AltPath`] always
//! carries the kind that [`classify_path`] assigns to it, an [`Ear`] has been
//! checked against its anchor set, and a [`Circuit`] is a genuine circuit of
//! the host graph.

use alloc::format;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::canon::ComponentId;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId, VertexSet};
use crate::matching::{find_perfect_matching, Matching};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathKind {
    /// A single vertex; also counts as balanced.
    Trivial,
    /// Both end edges matched; the matched edges cover the path.
    Saturated,
    /// Neither end edge matched; the unmatched edges cover the path.
    Exposed,
    /// Matched edges cover every vertex except `to`.
    Balanced { from: VertexId, to: VertexId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltPath {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
    kind: PathKind,
}

impl AltPath {
    /// Certifies `vertices`/`edges` as an alternating path of `g` w.r.t. `m`.
    pub fn new(g: &Graph, m: &Matching, vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Result<Self> {
        let kind = classify_path(g, m, &vertices, &edges)?
            .ok_or_else(|| Error::NotAlternating(format!("{vertices:?}")))?;
        Ok(AltPath { vertices, edges, kind })
    }

    pub fn trivial(v: VertexId) -> Self {
        AltPath { vertices: alloc::vec![v], edges: Vec::new(), kind: PathKind::Trivial }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn kind(&self) -> PathKind {
        self.kind
    }

    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        *self.vertices.last().expect("paths are non-empty")
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    pub fn reversed(&self) -> AltPath {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        AltPath { vertices, edges, kind: self.kind }
    }

    /// Whether this is a balanced path from `from` to `to` (trivial paths
    /// are balanced from their vertex to itself).
    pub fn is_balanced(&self, from: VertexId, to: VertexId) -> bool {
        match self.kind {
            PathKind::Trivial => from == to && self.first() == from,
            PathKind::Balanced { from: f, to: t } => f == from && t == to,
            _ => false,
        }
    }
}

/// Classifies a vertex/edge sequence of `g`, or errors if it is not a path.
///
/// Returns `None` when the path does not alternate.
pub fn classify_path(
    g: &Graph,
    m: &Matching,
    vertices: &[VertexId],
    edges: &[EdgeId],
) -> Result<Option<PathKind>> {
    check_walk(g, vertices, edges)?;
    let mut seen = VertexSet::new();
    if let Some(v) = vertices.iter().find(|v| !seen.insert(**v)) {
        return Err(Error::NotAPath(format!("vertex {v} repeats")));
    }
    if edges.is_empty() {
        return Ok(Some(PathKind::Trivial));
    }
    if !alternates(m, edges, false) {
        return Ok(None);
    }
    let first_matched = m.contains(edges[0]);
    let (a, b) = (vertices[0], *vertices.last().expect("non-empty"));
    Ok(Some(match (edges.len() % 2 == 1, first_matched) {
        (true, true) => PathKind::Saturated,
        (true, false) => PathKind::Exposed,
        (false, true) => PathKind::Balanced { from: a, to: b },
        (false, false) => PathKind::Balanced { from: b, to: a },
    }))
}

/// Classifies a vertex sequence; between consecutive vertices the matched
/// edge is used if there is one, otherwise the least edge id.
pub fn classify(g: &Graph, m: &Matching, vertices: &[VertexId]) -> Result<Option<PathKind>> {
    let mut edges = Vec::with_capacity(vertices.len().saturating_sub(1));
    for w in vertices.windows(2) {
        let e = pick_edge(g, m, w[0], w[1])
            .ok_or_else(|| Error::NotAPath(format!("{} and {} are not adjacent", w[0], w[1])))?;
        edges.push(e);
    }
    classify_path(g, m, vertices, &edges)
}

fn pick_edge(g: &Graph, m: &Matching, a: VertexId, b: VertexId) -> Option<EdgeId> {
    match m.mate_edge(a) {
        Some(e) if m.mate(a) == Some(b) => Some(e),
        _ => g.edges_between(a, b).filter(|e| !m.contains(*e)).min(),
    }
}

fn check_walk(g: &Graph, vertices: &[VertexId], edges: &[EdgeId]) -> Result<()> {
    if vertices.len() != edges.len() + 1 {
        return Err(Error::NotAPath(format!(
            "{} vertices but {} edges",
            vertices.len(),
            edges.len()
        )));
    }
    for v in vertices {
        if !g.contains(*v) {
            return Err(Error::UnknownVertex(*v));
        }
    }
    for (i, e) in edges.iter().enumerate() {
        let edge = g.edge(*e).ok_or(Error::UnknownEdge(*e))?;
        if edge.other(vertices[i]) != Some(vertices[i + 1]) {
            return Err(Error::NotAPath(format!(
                "edge {e} does not join {} and {}",
                vertices[i],
                vertices[i + 1]
            )));
        }
    }
    Ok(())
}

/// Consecutive edges alternate between matched and unmatched; with
/// `cyclic`, also the last and first edge.
fn alternates(m: &Matching, edges: &[EdgeId], cyclic: bool) -> bool {
    let ok = edges.windows(2).all(|w| m.contains(w[0]) != m.contains(w[1]));
    if cyclic && edges.len() > 1 {
        ok && m.contains(edges[0]) != m.contains(*edges.last().expect("non-empty"))
    } else {
        ok
    }
}

/// A circuit of the host graph: `edges[i]` joins `vertices[i]` and
/// `vertices[(i + 1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl Circuit {
    pub fn new(g: &Graph, vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Result<Self> {
        if vertices.len() < 2 || vertices.len() != edges.len() {
            return Err(Error::NotAPath(format!(
                "circuit needs matching vertex/edge counts >= 2, got {}/{}",
                vertices.len(),
                edges.len()
            )));
        }
        let mut closed = vertices.clone();
        closed.push(vertices[0]);
        check_walk(g, &closed, &edges)?;
        let mut seen = VertexSet::new();
        if let Some(v) = vertices.iter().find(|v| !seen.insert(**v)) {
            return Err(Error::NotAPath(format!("circuit repeats vertex {v}")));
        }
        let mut ids = edges.clone();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != edges.len() {
            return Err(Error::NotAPath("circuit repeats an edge".into()));
        }
        Ok(Circuit { vertices, edges })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Matched edges form a perfect matching of the circuit.
    pub fn is_alternating(&self, m: &Matching) -> bool {
        self.edges.len() % 2 == 0 && alternates(m, &self.edges, true)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }
}

/// `m △ E(c)` for an `m`-alternating circuit `c`.
pub fn switch_circuit(g: &Graph, m: &Matching, c: &Circuit) -> Result<Matching> {
    m.check_perfect(g)?;
    if !c.is_alternating(m) {
        return Err(Error::NotAlternating(format!("circuit {:?}", c.vertices())));
    }
    let out = m.symmetric_difference(g, c.edges().iter().copied())?;
    out.check_perfect(g)?;
    Ok(out)
}

/// Follows `primary` and `secondary` mates alternately from `start` until a
/// vertex has no `secondary` mate.
fn trace_alternating(start: VertexId, primary: &Matching, secondary: &Matching) -> (Vec<VertexId>, Vec<EdgeId>) {
    let mut vertices = alloc::vec![start];
    let mut edges = Vec::new();
    let mut cur = start;
    loop {
        let (Some(a), Some(ea)) = (primary.mate(cur), primary.mate_edge(cur)) else {
            break;
        };
        vertices.push(a);
        edges.push(ea);
        let (Some(b), Some(eb)) = (secondary.mate(a), secondary.mate_edge(a)) else {
            break;
        };
        vertices.push(b);
        edges.push(eb);
        cur = b;
    }
    (vertices, edges)
}

/// An `m`-saturated path between `x` and `y`, present iff `g - x - y` is
/// factorizable.
///
/// The path is the component of `m △ m'` containing `x`, where `m'` is a
/// perfect matching of `g - x - y`.
pub fn saturated_path(g: &Graph, m: &Matching, x: VertexId, y: VertexId) -> Result<Option<AltPath>> {
    m.check_perfect(g)?;
    for v in [x, y] {
        if !g.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    if x == y {
        return Err(Error::precondition("saturated path needs distinct ends"));
    }
    let rest = g.without(&[x, y]);
    let Some(other) = find_perfect_matching(&rest) else {
        return Ok(None);
    };
    let (vertices, edges) = trace_alternating(x, m, &other);
    if vertices.last() != Some(&y) {
        return Err(Error::internal("symmetric difference path does not end at y"));
    }
    let p = AltPath::new(g, m, vertices, edges)?;
    if p.kind() != PathKind::Saturated {
        return Err(Error::internal("symmetric difference path is not saturated"));
    }
    Ok(Some(p))
}

/// An `m`-balanced path from `x` to `y` (so `y` is the end left uncovered
/// by the path's matched edges) with all vertices in `confined`.
///
/// The matching restricted to `confined` must be perfect, or perfect except
/// for `y`. Built by hanging an auxiliary vertex matched to `y` and asking
/// for a saturated path to it.
pub fn balanced_path(
    g: &Graph,
    m: &Matching,
    x: VertexId,
    y: VertexId,
    confined: &VertexSet,
) -> Result<Option<AltPath>> {
    g.check_subset(confined)?;
    for v in [x, y] {
        if !confined.contains(&v) {
            return Err(Error::Confinement(format!("{v} is outside the confinement set")));
        }
    }
    if x == y {
        return Ok(Some(AltPath::trivial(x)));
    }
    let mut inner = g.induced_unchecked(confined);
    let mut inner_m = m.restrict(&inner);
    let uncovered: Vec<VertexId> = inner.vertices().filter(|v| !inner_m.covers(*v)).collect();
    match uncovered.as_slice() {
        [] => {
            // y's own partner can never lie on a balanced path ending at y.
            let w = inner_m.mate(y).expect("perfect");
            if w == x {
                return Ok(None);
            }
            inner = inner.without(&[w]);
            inner_m = inner_m.restrict(&inner);
        }
        [u] if *u == y => {}
        _ => {
            return Err(Error::Confinement(format!(
                "matching restricted to the confinement set leaves {uncovered:?} uncovered"
            )))
        }
    }
    let aux = inner.fresh_vertex_id().max(g.fresh_vertex_id());
    inner.add_vertex(aux);
    let aux_edge = inner.fresh_edge_id().max(g.fresh_edge_id());
    inner.insert_edge(aux_edge, y, aux).expect("fresh ids");
    inner_m.insert(&inner, aux_edge).expect("y uncovered");
    let Some(p) = saturated_path(&inner, &inner_m, x, aux)? else {
        return Ok(None);
    };
    let mut vertices = p.vertices.clone();
    let mut edges = p.edges.clone();
    vertices.pop();
    edges.pop();
    let q = AltPath::new(g, m, vertices, edges)?;
    if !q.is_balanced(x, y) {
        return Err(Error::internal("auxiliary construction did not yield a balanced path"));
    }
    Ok(Some(q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EarShape {
    /// An exposed path with both (distinct) ends in the anchor set.
    Proper,
    /// A circuit meeting the anchor set in one vertex `x`, with `C - x`
    /// saturated.
    Circuit,
}

/// An ear relative to an anchor set. For the circuit shape the vertex
/// sequence starts and ends at the anchor vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ear {
    shape: EarShape,
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl Ear {
    pub fn new(
        g: &Graph,
        m: &Matching,
        vertices: Vec<VertexId>,
        edges: Vec<EdgeId>,
        anchor: &VertexSet,
    ) -> Result<Self> {
        check_walk(g, &vertices, &edges)?;
        let fail = |why: &str| Err(Error::NotAlternating(format!("{vertices:?} is not an ear: {why}")));
        if edges.is_empty() {
            return fail("no edges");
        }
        let (a, b) = (vertices[0], *vertices.last().expect("non-empty"));
        if !anchor.contains(&a) || !anchor.contains(&b) {
            return fail("ends outside the anchor set");
        }
        let interior = &vertices[1..vertices.len() - 1];
        if interior.iter().any(|v| anchor.contains(v)) {
            return fail("interior meets the anchor set");
        }
        let mut seen = VertexSet::new();
        if interior.iter().any(|v| !seen.insert(*v)) || seen.contains(&a) || seen.contains(&b) {
            return fail("repeated vertex");
        }
        let shape = if a == b { EarShape::Circuit } else { EarShape::Proper };
        if shape == EarShape::Circuit && edges.len() < 3 {
            return fail("circuit too short");
        }
        if edges.len() % 2 == 0 || m.contains(edges[0]) || !alternates(m, &edges, false) {
            return fail("not exposed");
        }
        Ok(Ear { shape, vertices, edges })
    }

    pub fn shape(&self) -> EarShape {
        self.shape
    }

    pub fn is_proper(&self) -> bool {
        self.shape == EarShape::Proper
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.len() == 1
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn ends(&self) -> (VertexId, VertexId) {
        (self.vertices[0], *self.vertices.last().expect("non-empty"))
    }

    pub fn interior(&self) -> &[VertexId] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    /// Has a non-end vertex in `set`.
    pub fn traverses(&self, set: &VertexSet) -> bool {
        self.interior().iter().any(|v| set.contains(v))
    }

    /// The proper ear as an exposed path.
    pub fn as_path(&self, g: &Graph, m: &Matching) -> Result<AltPath> {
        if !self.is_proper() {
            return Err(Error::precondition("only proper ears are paths"));
        }
        AltPath::new(g, m, self.vertices.clone(), self.edges.clone())
    }

    pub fn reversed(&self) -> Ear {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        Ear { shape: self.shape, vertices, edges }
    }
}

/// Maximal pieces of a path or closed walk whose interiors avoid `x`, each
/// certified as an ear relative to `x`. Single edges with both ends in `x`
/// are dropped.
///
/// A closed walk repeats its first vertex at the end.
pub fn ear_split(
    g: &Graph,
    m: &Matching,
    vertices: &[VertexId],
    edges: &[EdgeId],
    x: &VertexSet,
) -> Result<Vec<Ear>> {
    check_walk(g, vertices, edges)?;
    let closed = vertices.len() > 1 && vertices[0] == *vertices.last().expect("non-empty");
    let k = edges.len();
    let start = if closed { (0..k).find(|&i| x.contains(&vertices[i])).unwrap_or(0) } else { 0 };
    let mut ears = Vec::new();
    let mut run_v: Vec<VertexId> = alloc::vec![vertices[start]];
    let mut run_e: Vec<EdgeId> = Vec::new();
    for j in 0..k {
        let i = (start + j) % k;
        run_v.push(vertices[i + 1]);
        run_e.push(edges[i]);
        if x.contains(&vertices[i + 1]) || j + 1 == k {
            let dropped = run_e.len() == 1 && x.contains(&run_v[0]) && x.contains(&run_v[1]);
            let (vs, es) = (core::mem::take(&mut run_v), core::mem::take(&mut run_e));
            run_v.push(vertices[i + 1]);
            if !dropped {
                ears.push(Ear::new(g, m, vs, es, x)?);
            }
        }
    }
    Ok(ears)
}

/// Depth-first enumeration of all ears relative to `anchor` (trivial ones
/// included). Proper ears are reported once per direction, circuits once per
/// orientation. Exponential; meant for small graphs.
pub fn visit_ears<F>(g: &Graph, m: &Matching, anchor: &VertexSet, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[VertexId], &[EdgeId]) -> ControlFlow<()>,
{
    for &x in anchor {
        let mut vs = alloc::vec![x];
        let mut es = Vec::new();
        let mut on_path = VertexSet::new();
        extend_ear(g, m, anchor, &mut vs, &mut es, &mut on_path, &mut visit)?;
    }
    ControlFlow::Continue(())
}

/// From the last vertex of `vs` (reached by a matched edge, or the start),
/// try every unmatched edge.
fn extend_ear<F>(
    g: &Graph,
    m: &Matching,
    anchor: &VertexSet,
    vs: &mut Vec<VertexId>,
    es: &mut Vec<EdgeId>,
    on_path: &mut VertexSet,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[VertexId], &[EdgeId]) -> ControlFlow<()>,
{
    let cur = *vs.last().expect("non-empty");
    let mut inc: Vec<(VertexId, EdgeId)> = g.incident(cur).to_vec();
    inc.sort();
    for (a, e) in inc {
        if m.contains(e) {
            continue;
        }
        if anchor.contains(&a) {
            // closing edge; a one-point circuit needs an interior
            if a == vs[0] && vs.len() == 1 {
                continue;
            }
            vs.push(a);
            es.push(e);
            let r = visit(vs, es);
            vs.pop();
            es.pop();
            r?;
            continue;
        }
        if on_path.contains(&a) {
            continue;
        }
        let (Some(b), Some(mb)) = (m.mate(a), m.mate_edge(a)) else {
            continue;
        };
        if anchor.contains(&b) || on_path.contains(&b) {
            continue;
        }
        vs.extend([a, b]);
        es.extend([e, mb]);
        on_path.insert(a);
        on_path.insert(b);
        let r = extend_ear(g, m, anchor, vs, es, on_path, visit);
        on_path.remove(&a);
        on_path.remove(&b);
        vs.truncate(vs.len() - 2);
        es.truncate(es.len() - 2);
        r?;
    }
    ControlFlow::Continue(())
}

/// The first ear (in depth-first least-id order) relative to `anchor` whose
/// interior meets `waypoint`.
pub fn find_ear_through(g: &Graph, m: &Matching, anchor: &VertexSet, waypoint: &VertexSet) -> Result<Option<Ear>> {
    let mut found = None;
    let _ = visit_ears(g, m, anchor, |vs, es| {
        if vs[1..vs.len() - 1].iter().any(|v| waypoint.contains(v)) {
            found = Some((vs.to_vec(), es.to_vec()));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found.map(|(vs, es)| Ear::new(g, m, vs, es, anchor)).transpose()
}

/// An exposed path between two distinct factor-components, meeting them
/// only at its ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub path: AltPath,
    pub ends: (ComponentId, ComponentId),
}

impl Arc {
    pub fn vertices(&self) -> &[VertexId] {
        self.path.vertices()
    }

    pub fn reversed(&self) -> Arc {
        Arc { path: self.path.reversed(), ends: (self.ends.1, self.ends.0) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph::vset;
    use crate::matching::is_factorizable;

    fn v(ids: &[u32]) -> Vec<VertexId> {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    fn c6m() -> (Graph, Matching) {
        let g = catalog::c6();
        let m = Matching::from_pairs(&g, &[(1, 2), (3, 4), (5, 6)]).unwrap();
        (g, m)
    }

    #[test]
    fn classify_examples() {
        let (g, m) = c6m();
        assert_eq!(classify(&g, &m, &v(&[1, 2, 3, 4])).unwrap(), Some(PathKind::Saturated));
        assert_eq!(classify(&g, &m, &v(&[2, 3])).unwrap(), Some(PathKind::Exposed));
        assert_eq!(
            classify(&g, &m, &v(&[1, 2, 3])).unwrap(),
            Some(PathKind::Balanced { from: VertexId(1), to: VertexId(3) })
        );
        assert_eq!(classify(&g, &m, &v(&[4])).unwrap(), Some(PathKind::Trivial));
        assert!(classify(&g, &m, &v(&[1, 3])).is_err());
        assert!(classify(&g, &m, &v(&[1, 2, 1])).is_err());
    }

    #[test]
    fn switch_circuit_examples() {
        let (g, m) = c6m();
        let c = Circuit::new(&g, v(&[1, 2, 3, 4, 5, 6]), (0..6).map(EdgeId).collect()).unwrap();
        assert!(c.is_alternating(&m));
        let s = switch_circuit(&g, &m, &c).unwrap();
        let pairs: Vec<_> = s.pairs().into_iter().map(|(a, b)| (a.0, b.0)).collect();
        assert_eq!(pairs, [(1, 6), (2, 3), (4, 5)]);
        assert_eq!(switch_circuit(&g, &s, &c).unwrap(), m);

        let k4 = catalog::k4();
        let mk = Matching::from_pairs(&k4, &[(1, 2), (3, 4)]).unwrap();
        let sq = Circuit::new(&k4, v(&[1, 2, 4, 3]), [0u32, 4, 5, 1].map(EdgeId).to_vec()).unwrap();
        let swapped = switch_circuit(&k4, &mk, &sq).unwrap();
        assert_eq!(swapped, Matching::from_pairs(&k4, &[(2, 4), (1, 3)]).unwrap());

        let p4 = catalog::p4();
        assert!(Circuit::new(&p4, v(&[1, 2, 3]), [0u32, 1, 2].map(EdgeId).to_vec()).is_err());
        let tri = catalog::triangle();
        let odd = Circuit::new(&tri, v(&[1, 2, 3]), [0u32, 1, 2].map(EdgeId).to_vec()).unwrap();
        let mt = Matching::from_pairs(&tri, &[(1, 2)]).unwrap();
        assert!(!odd.is_alternating(&mt));
        // a 4-cycle of C6 edges is not a circuit of C6
        assert!(Circuit::new(&g, v(&[1, 2, 3, 4]), [0u32, 1, 2, 3].map(EdgeId).to_vec()).is_err());
    }

    #[test]
    fn saturated_path_examples() {
        let (g, m) = c6m();
        let p = saturated_path(&g, &m, VertexId(1), VertexId(4)).unwrap().unwrap();
        assert_eq!(p.vertices(), v(&[1, 2, 3, 4]));
        assert_eq!(p.kind(), PathKind::Saturated);
        assert!(saturated_path(&g, &m, VertexId(1), VertexId(3)).unwrap().is_none());
        let q = saturated_path(&g, &m, VertexId(5), VertexId(6)).unwrap().unwrap();
        assert_eq!(q.vertices(), v(&[5, 6]));
        let half = Matching::from_pairs(&g, &[(1, 2)]).unwrap();
        assert!(saturated_path(&g, &half, VertexId(1), VertexId(4)).is_err());
    }

    #[test]
    fn saturated_path_matches_deletion_test() {
        let g = catalog::petersen();
        let m = find_perfect_matching(&g).unwrap();
        for x in g.vertices() {
            for y in g.vertices().filter(|&y| y != x) {
                let p = saturated_path(&g, &m, x, y).unwrap();
                assert_eq!(p.is_some(), is_factorizable(&g.without(&[x, y])));
                if let Some(p) = p {
                    assert_eq!((p.first(), p.last()), (x, y));
                }
            }
        }
    }

    #[test]
    fn balanced_path_examples() {
        let (g, m) = c6m();
        let p = balanced_path(&g, &m, VertexId(1), VertexId(3), &g.vertex_set()).unwrap().unwrap();
        assert_eq!(p.vertices(), v(&[1, 2, 3]));
        assert!(p.is_balanced(VertexId(1), VertexId(3)));
        let t = balanced_path(&g, &m, VertexId(5), VertexId(5), &vset([5])).unwrap().unwrap();
        assert_eq!(t.kind(), PathKind::Trivial);

        let paw = catalog::paw();
        let mp = Matching::from_pairs(&paw, &[(1, 2), (3, 4)]).unwrap();
        let q = balanced_path(&paw, &mp, VertexId(4), VertexId(1), &vset([1, 3, 4])).unwrap().unwrap();
        assert_eq!(q.vertices(), v(&[4, 3, 1]));
        assert!(matches!(
            balanced_path(&paw, &mp, VertexId(2), VertexId(1), &vset([1, 3, 4])),
            Err(Error::Confinement(_))
        ));
        // confinement with two uncovered vertices
        assert!(matches!(
            balanced_path(&paw, &mp, VertexId(3), VertexId(1), &vset([1, 3])),
            Err(Error::Confinement(_))
        ));
    }

    #[test]
    fn ear_split_examples() {
        let (g, m) = c6m();
        let ear_v = v(&[2, 3, 4, 5]);
        let ear_e = [1u32, 2, 3].map(EdgeId).to_vec();
        let x = vset([2, 5]);
        let ears = ear_split(&g, &m, &ear_v, &ear_e, &x).unwrap();
        assert_eq!(ears.len(), 1);
        assert_eq!(ears[0].vertices(), ear_v.as_slice());
        assert!(ears[0].is_proper());

        let inside = ear_split(&g, &m, &v(&[1, 2, 3]), &[0u32, 1].map(EdgeId), &vset([1, 2, 3])).unwrap();
        assert!(inside.is_empty());

        // the full circuit C6 as a closed walk from 1, split at the edge 12
        let closed_v = v(&[1, 2, 3, 4, 5, 6, 1]);
        let closed_e: Vec<EdgeId> = (0..6).map(EdgeId).collect();
        let parts = ear_split(&g, &m, &closed_v, &closed_e, &vset([1, 2])).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].ends(), (VertexId(2), VertexId(1)));

        // a circuit ear at 1 that also passes through 4 and 5
        let g7 = Graph::from_edges(1..=7, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 1)]).unwrap();
        let m7 = Matching::from_pairs(&g7, &[(2, 3), (4, 5), (6, 7)]).unwrap();
        let walk_e: Vec<EdgeId> = (0..7).map(EdgeId).collect();
        let parts = ear_split(&g7, &m7, &v(&[1, 2, 3, 4, 5, 6, 7, 1]), &walk_e, &vset([1, 4, 5])).unwrap();
        let got: Vec<_> = parts.iter().map(|e| e.vertices().to_vec()).collect();
        assert_eq!(got, [v(&[1, 2, 3, 4]), v(&[5, 6, 7, 1])]);
        assert!(parts.iter().all(|e| e.is_proper()));
    }

    #[test]
    fn ear_enumeration_on_c6() {
        let (g, m) = c6m();
        let anchor = vset([2, 5]);
        let ear = find_ear_through(&g, &m, &anchor, &vset([3])).unwrap().unwrap();
        assert_eq!(ear.vertices(), v(&[2, 3, 4, 5]));
        let mut count = 0;
        let _ = visit_ears(&g, &m, &anchor, |_, _| {
            count += 1;
            ControlFlow::Continue(())
        });
        // 2-3-4-5 in both directions; 2-1-6-5 starts with a matched edge
        assert_eq!(count, 2);
        let long = find_ear_through(&g, &m, &vset([1, 2]), &vset([4])).unwrap().unwrap();
        assert_eq!(long.vertices(), v(&[1, 6, 5, 4, 3, 2]));
        // relative to {1}: C6 itself, closing back at 1
        let circ = find_ear_through(&g, &m, &vset([1]), &vset([4])).unwrap();
        assert!(circ.is_none());
    }
}
