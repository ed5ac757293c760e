//! Undirected multigraphs with stable vertex and edge ids.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

pub type VertexSet = BTreeSet<VertexId>;

/// Builds a vertex set from raw ids.
pub fn vset<I: IntoIterator<Item = u32>>(ids: I) -> VertexSet {
    ids.into_iter().map(VertexId).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> Option<VertexId> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn has(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    /// Endpoints with the smaller id first.
    pub fn ends(&self) -> (VertexId, VertexId) {
        if self.u <= self.v {
            (self.u, self.v)
        } else {
            (self.v, self.u)
        }
    }
}

/// An undirected multigraph without loops.
///
/// Graphs are plain values: every structural operation returns a new graph
/// and keeps the ids of the vertices and edges it retains.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, Vec<(VertexId, EdgeId)>>,
    edges: BTreeMap<EdgeId, Edge>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on the given vertices with edges numbered `0..` in list order.
    pub fn from_edges<I>(vertices: I, edges: &[(u32, u32)]) -> Result<Self>
    where
        I: IntoIterator<Item = u32>,
    {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(VertexId(v));
        }
        for &(a, b) in edges {
            g.add_edge(VertexId(a), VertexId(b))?;
        }
        Ok(g)
    }

    /// Returns `false` if the vertex was already present.
    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, Vec::new());
        true
    }

    /// Adds an edge with the next free edge id.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        let id = self.fresh_edge_id();
        self.insert_edge(id, u, v)?;
        Ok(id)
    }

    pub fn insert_edge(&mut self, id: EdgeId, u: VertexId, v: VertexId) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        for x in [u, v] {
            if !self.adj.contains_key(&x) {
                return Err(Error::UnknownVertex(x));
            }
        }
        if self.edges.contains_key(&id) {
            return Err(Error::DuplicateEdge(id));
        }
        self.edges.insert(id, Edge { id, u, v });
        self.adj.get_mut(&u).expect("checked").push((v, id));
        self.adj.get_mut(&v).expect("checked").push((u, id));
        Ok(())
    }

    pub fn fresh_edge_id(&self) -> EdgeId {
        self.edges
            .keys()
            .next_back()
            .map_or(EdgeId(0), |e| EdgeId(e.0 + 1))
    }

    pub fn fresh_vertex_id(&self) -> VertexId {
        self.adj
            .keys()
            .next_back()
            .map_or(VertexId(0), |v| VertexId(v.0 + 1))
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.values()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.get(&id)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    /// Incident `(neighbor, edge)` pairs in insertion order.
    pub fn incident(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        self.adj.get(&v).map_or(&[], |a| a.as_slice())
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    pub fn neighbors(&self, v: VertexId) -> VertexSet {
        self.incident(v).iter().map(|&(w, _)| w).collect()
    }

    pub fn edges_between(&self, a: VertexId, b: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.incident(a)
            .iter()
            .filter(move |&&(w, _)| w == b)
            .map(|&(_, e)| e)
    }

    pub fn has_edge_between(&self, a: VertexId, b: VertexId) -> bool {
        self.edges_between(a, b).next().is_some()
    }

    pub fn check_subset(&self, x: &VertexSet) -> Result<()> {
        match x.iter().find(|v| !self.contains(**v)) {
            Some(&v) => Err(Error::UnknownVertex(v)),
            None => Ok(()),
        }
    }

    /// `G[X]`: vertices `x` and every edge with both ends in `x`.
    pub fn induced_subgraph(&self, x: &VertexSet) -> Result<Graph> {
        self.check_subset(x)?;
        Ok(self.induced_unchecked(x))
    }

    pub(crate) fn induced_unchecked(&self, x: &VertexSet) -> Graph {
        let adj = x
            .iter()
            .map(|&v| {
                let inc = self.incident(v).iter().filter(|(w, _)| x.contains(w)).copied().collect();
                (v, inc)
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|(_, e)| x.contains(&e.u) && x.contains(&e.v))
            .map(|(&id, &e)| (id, e))
            .collect();
        Graph { adj, edges }
    }

    /// `G - X`.
    pub fn delete_vertices(&self, x: &VertexSet) -> Result<Graph> {
        self.check_subset(x)?;
        let keep: VertexSet = self.vertices().filter(|v| !x.contains(v)).collect();
        Ok(self.induced_unchecked(&keep))
    }

    pub(crate) fn without(&self, drop: &[VertexId]) -> Graph {
        let keep: VertexSet = self.vertices().filter(|v| !drop.contains(v)).collect();
        self.induced_unchecked(&keep)
    }

    /// `G / X`: the vertices of `x` collapse onto its least id.
    ///
    /// Parallel edges created by the contraction are kept; edges with both
    /// ends in `x` are dropped.
    pub fn contract(&self, x: &VertexSet) -> Result<Graph> {
        self.contract_with_representative(x).map(|(g, _)| g)
    }

    pub fn contract_with_representative(&self, x: &VertexSet) -> Result<(Graph, VertexId)> {
        self.check_subset(x)?;
        let rep = *x.first().ok_or(Error::EmptyContraction)?;
        let map = |v: VertexId| if x.contains(&v) { rep } else { v };
        let mut g = Graph::new();
        for v in self.vertices() {
            g.add_vertex(map(v));
        }
        for e in self.edges.values() {
            let (a, b) = (map(e.u), map(e.v));
            if a != b {
                g.insert_edge(e.id, a, b).expect("endpoints present, id unique");
            }
        }
        Ok((g, rep))
    }

    /// Connected components ordered by least vertex id.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for start in self.vertices() {
            if seen.contains(&start) {
                continue;
            }
            let comp = self.reach(start, |_| true);
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start` through vertices accepted by `allow`.
    pub(crate) fn reach<F: Fn(VertexId) -> bool>(&self, start: VertexId, allow: F) -> VertexSet {
        let mut seen = VertexSet::new();
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in self.incident(v) {
                if allow(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        match self.vertices().next() {
            None => true,
            Some(s) => self.reach(s, |_| true).len() == self.vertex_count(),
        }
    }

    /// At least four vertices and no separating set of two vertices.
    pub fn is_three_connected(&self) -> bool {
        let vs: Vec<VertexId> = self.vertices().collect();
        if vs.len() < 4 {
            return false;
        }
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                let start = *vs.iter().find(|&&v| v != a && v != b).expect("n >= 4");
                let seen = self.reach(start, |w| w != a && w != b);
                if seen.len() != vs.len() - 2 {
                    return false;
                }
            }
        }
        true
    }

    /// `N(X)`: vertices outside `x` adjacent to some vertex of `x`.
    pub fn neighborhood(&self, x: &VertexSet) -> VertexSet {
        x.iter()
            .flat_map(|&v| self.incident(v).iter().map(|&(w, _)| w))
            .filter(|w| !x.contains(w))
            .collect()
    }

    /// `E[X, Y]`: edges with one end in `x` and the other in `y`.
    pub fn edges_across(&self, x: &VertexSet, y: &VertexSet) -> Vec<EdgeId> {
        self.edges
            .values()
            .filter(|e| {
                (x.contains(&e.u) && y.contains(&e.v)) || (x.contains(&e.v) && y.contains(&e.u))
            })
            .map(|e| e.id)
            .collect()
    }

    /// `δ(X)`.
    pub fn cut(&self, x: &VertexSet) -> Vec<EdgeId> {
        self.edges
            .values()
            .filter(|e| x.contains(&e.u) != x.contains(&e.v))
            .map(|e| e.id)
            .collect()
    }
}
