//! Matchings, perfect-matching search, and the predicates built on it.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId, VertexSet};

/// A set of pairwise disjoint edges of some host graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    edges: BTreeSet<EdgeId>,
    mate: BTreeMap<VertexId, (VertexId, EdgeId)>,
}

impl Matching {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges<I: IntoIterator<Item = EdgeId>>(g: &Graph, edges: I) -> Result<Self> {
        let mut m = Matching::new();
        for e in edges {
            m.insert(g, e)?;
        }
        Ok(m)
    }

    /// Matching given by vertex pairs; each pair uses its least edge id.
    pub fn from_pairs(g: &Graph, pairs: &[(u32, u32)]) -> Result<Self> {
        let mut m = Matching::new();
        for &(a, b) in pairs {
            let (a, b) = (VertexId(a), VertexId(b));
            for x in [a, b] {
                if !g.contains(x) {
                    return Err(Error::UnknownVertex(x));
                }
            }
            let e = g
                .edges_between(a, b)
                .min()
                .ok_or_else(|| Error::precondition(alloc::format!("no edge between {a} and {b}")))?;
            m.insert(g, e)?;
        }
        Ok(m)
    }

    pub fn insert(&mut self, g: &Graph, e: EdgeId) -> Result<()> {
        let edge = *g.edge(e).ok_or(Error::UnknownEdge(e))?;
        if self.edges.contains(&e) {
            return Ok(());
        }
        for x in [edge.u, edge.v] {
            if self.mate.contains_key(&x) {
                return Err(Error::NotAMatching(x));
            }
        }
        self.edges.insert(e);
        self.mate.insert(edge.u, (edge.v, e));
        self.mate.insert(edge.v, (edge.u, e));
        Ok(())
    }

    pub fn remove(&mut self, e: EdgeId) -> bool {
        if !self.edges.remove(&e) {
            return false;
        }
        self.mate.retain(|_, &mut (_, id)| id != e);
        true
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn mate(&self, v: VertexId) -> Option<VertexId> {
        self.mate.get(&v).map(|&(w, _)| w)
    }

    pub fn mate_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.mate.get(&v).map(|&(_, e)| e)
    }

    pub fn covers(&self, v: VertexId) -> bool {
        self.mate.contains_key(&v)
    }

    /// Matched pairs with the smaller id first, sorted.
    pub fn pairs(&self) -> Vec<(VertexId, VertexId)> {
        self.mate
            .iter()
            .filter(|(v, (w, _))| v < &w)
            .map(|(&v, &(w, _))| (v, w))
            .collect()
    }

    /// Errors unless every edge belongs to `g` and every vertex of `g` is covered.
    pub fn check_perfect(&self, g: &Graph) -> Result<()> {
        if let Some(&e) = self.edges.iter().find(|e| !g.contains_edge(**e)) {
            return Err(Error::UnknownEdge(e));
        }
        match g.vertices().find(|v| !self.covers(*v)) {
            Some(v) => Err(Error::ImperfectMatching(v)),
            None => Ok(()),
        }
    }

    pub fn is_perfect(&self, g: &Graph) -> bool {
        self.check_perfect(g).is_ok()
    }

    /// The edges that are also edges of `g`.
    pub fn restrict(&self, g: &Graph) -> Matching {
        let mut m = Matching::new();
        for e in self.edges() {
            if g.contains_edge(e) {
                m.insert(g, e).expect("subset of a matching");
            }
        }
        m
    }

    /// `self △ edges`, which must again be a matching of `g`.
    pub fn symmetric_difference<I>(&self, g: &Graph, edges: I) -> Result<Matching>
    where
        I: IntoIterator<Item = EdgeId>,
    {
        let mut set = self.edges.clone();
        for e in edges {
            if !set.remove(&e) {
                set.insert(e);
            }
        }
        Matching::from_edges(g, set)
    }

    /// Number of matching edges in `δ(X)`.
    pub fn crossing_count(&self, g: &Graph, x: &VertexSet) -> usize {
        self.edges
            .iter()
            .filter_map(|e| g.edge(*e))
            .filter(|e| x.contains(&e.u) != x.contains(&e.v))
            .count()
    }
}

const NONE: usize = usize::MAX;

/// Index-based copy of a graph for the blossom search.
pub(crate) struct Dense {
    ids: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    adj: Vec<Vec<usize>>,
}

impl Dense {
    pub(crate) fn new(g: &Graph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = ids
            .iter()
            .map(|&v| {
                let mut nb: Vec<usize> = g.incident(v).iter().map(|(w, _)| index[w]).collect();
                nb.sort_unstable();
                nb.dedup();
                nb
            })
            .collect();
        Dense { ids, index, adj }
    }

    pub(crate) fn index_of(&self, v: VertexId) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub(crate) fn id(&self, i: usize) -> VertexId {
        self.ids[i]
    }

    /// Perfect matching of the vertices not marked in `skip`, as a mate
    /// array, or `None` if there is none.
    pub(crate) fn perfect(&self, skip: &[bool]) -> Option<Vec<usize>> {
        let n = self.ids.len();
        let live = (0..n).filter(|&i| !skip[i]).count();
        if live % 2 == 1 {
            return None;
        }
        let mut mate = vec![NONE; n];
        // greedy start
        for v in 0..n {
            if skip[v] || mate[v] != NONE {
                continue;
            }
            if let Some(&w) = self.adj[v].iter().find(|&&w| !skip[w] && mate[w] == NONE && w != v) {
                mate[v] = w;
                mate[w] = v;
            }
        }
        let mut search = BlossomSearch::new(n);
        for root in 0..n {
            if skip[root] || mate[root] != NONE {
                continue;
            }
            // An exposed vertex with no augmenting path stays exposed forever.
            let end = search.find_path(&self.adj, skip, &mate, root)?;
            let mut u = end;
            while u != NONE {
                let pv = search.parent[u];
                let ppv = mate[pv];
                mate[u] = pv;
                mate[pv] = u;
                u = ppv;
            }
        }
        Some(mate)
    }
}

struct BlossomSearch {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl BlossomSearch {
    fn new(n: usize) -> Self {
        BlossomSearch {
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// Augmenting path search from `root`; returns the exposed far end.
    fn find_path(&mut self, adj: &[Vec<usize>], skip: &[bool], mate: &[usize], root: usize) -> Option<usize> {
        let n = mate.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in &adj[v] {
                if skip[to] || self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if !skip[i] && self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return Some(to);
                    }
                    let next = mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}

fn mate_array_to_matching(g: &Graph, dense: &Dense, mate: &[usize]) -> Matching {
    let mut m = Matching::new();
    for (i, &j) in mate.iter().enumerate() {
        if j == NONE || j < i {
            continue;
        }
        let e = g
            .edges_between(dense.id(i), dense.id(j))
            .min()
            .expect("mate pairs are adjacent");
        m.insert(g, e).expect("mate array is a matching");
    }
    m
}

/// A perfect matching of `g`, if one exists.
///
/// The result depends only on the graph: each matched pair uses its least
/// edge id.
pub fn find_perfect_matching(g: &Graph) -> Option<Matching> {
    let dense = Dense::new(g);
    let skip = vec![false; g.vertex_count()];
    dense.perfect(&skip).map(|mate| mate_array_to_matching(g, &dense, &mate))
}

/// A perfect matching of `g` containing edge `e`, if one exists.
pub fn perfect_matching_containing(g: &Graph, e: EdgeId) -> Result<Option<Matching>> {
    let edge = *g.edge(e).ok_or(Error::UnknownEdge(e))?;
    let rest = g.without(&[edge.u, edge.v]);
    Ok(find_perfect_matching(&rest).map(|mut m| {
        m.insert(g, e).expect("endpoints removed from the rest");
        m
    }))
}

pub fn is_factorizable(g: &Graph) -> bool {
    if g.vertex_count() % 2 == 1 {
        return false;
    }
    let dense = Dense::new(g);
    dense.perfect(&vec![false; g.vertex_count()]).is_some()
}

/// A single vertex, or every vertex-deleted subgraph is factorizable.
pub fn is_factor_critical(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n == 1 {
        return true;
    }
    if n % 2 == 0 && n > 0 {
        return false;
    }
    let dense = Dense::new(g);
    let mut skip = vec![false; n];
    (0..n).all(|i| {
        skip[i] = true;
        let ok = dense.perfect(&skip).is_some();
        skip[i] = false;
        ok
    })
}

/// Pairwise test "is `g - a - b` factorizable" over a fixed graph.
pub(crate) struct PairOracle {
    dense: Dense,
    cache: BTreeMap<(usize, usize), bool>,
}

impl PairOracle {
    pub(crate) fn new(g: &Graph) -> Self {
        PairOracle { dense: Dense::new(g), cache: BTreeMap::new() }
    }

    pub(crate) fn factorizable_without(&mut self, a: VertexId, b: VertexId) -> bool {
        let (Some(i), Some(j)) = (self.dense.index_of(a), self.dense.index_of(b)) else {
            return false;
        };
        let key = (i.min(j), i.max(j));
        if let Some(&r) = self.cache.get(&key) {
            return r;
        }
        let mut skip = vec![false; self.dense.ids.len()];
        skip[i] = true;
        skip[j] = true;
        let r = i != j && self.dense.perfect(&skip).is_some();
        self.cache.insert(key, r);
        r
    }
}

/// Edges contained in some perfect matching, by the per-edge deletion test.
pub fn allowed_edges(g: &Graph) -> Result<BTreeSet<EdgeId>> {
    let m = find_perfect_matching(g).ok_or(Error::NotFactorizable)?;
    let mut oracle = PairOracle::new(g);
    Ok(g
        .edges()
        .filter(|e| m.contains(e.id) || oracle.factorizable_without(e.u, e.v))
        .map(|e| e.id)
        .collect())
}

/// The first vertex pair whose removal leaves a disconnected or
/// unfactorizable graph. `Some(None)` reports a failure that is not tied to
/// a pair (too few vertices, odd order); `None` means `g` is a brick.
pub fn brick_violation(g: &Graph) -> Option<Option<(VertexId, VertexId)>> {
    let n = g.vertex_count();
    if n < 4 || n % 2 == 1 {
        return Some(None);
    }
    let vs: Vec<VertexId> = g.vertices().collect();
    let mut oracle = PairOracle::new(g);
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            if !oracle.factorizable_without(a, b) || !g.without(&[a, b]).is_connected() {
                return Some(Some((a, b)));
            }
        }
    }
    None
}

pub fn is_brick(g: &Graph) -> bool {
    brick_violation(g).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph::vset;
    use crate::oracle::enumerate_perfect_matchings;

    fn pairs(m: &Matching) -> Vec<(u32, u32)> {
        m.pairs().into_iter().map(|(a, b)| (a.0, b.0)).collect()
    }

    #[test]
    fn perfect_matching_examples() {
        let p4 = catalog::p4();
        assert_eq!(pairs(&find_perfect_matching(&p4).unwrap()), [(1, 2), (3, 4)]);
        assert!(find_perfect_matching(&catalog::p3()).is_none());
        let k4 = find_perfect_matching(&catalog::k4()).unwrap();
        let all: Vec<_> = enumerate_perfect_matchings(&catalog::k4(), 16).unwrap();
        assert_eq!(all.len(), 3);
        assert!(all.contains(&k4));
        assert_eq!(find_perfect_matching(&catalog::k4()), Some(k4));
    }

    #[test]
    fn blossom_is_needed() {
        // Two triangles joined by an edge: the greedy start may pick a wrong
        // edge inside a triangle; a blossom must be shrunk to repair it.
        let g = Graph::from_edges(1..=6, &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6), (4, 6)]).unwrap();
        let m = find_perfect_matching(&g).unwrap();
        assert!(m.is_perfect(&g));
        assert!(find_perfect_matching(&catalog::petersen()).unwrap().is_perfect(&catalog::petersen()));
    }

    #[test]
    fn factorizability_examples() {
        assert!(is_factorizable(&catalog::c6()));
        let k33 = catalog::k33().delete_vertices(&vset([1, 2])).unwrap();
        assert!(!is_factorizable(&k33));
        assert!(is_factorizable(&Graph::new()));
    }

    #[test]
    fn factor_critical_examples() {
        assert!(is_factor_critical(&catalog::triangle()));
        assert!(is_factor_critical(&Graph::from_edges([1], &[]).unwrap()));
        assert!(!is_factor_critical(&catalog::p3()));
        assert!(!is_factor_critical(&catalog::k4()));
    }

    #[test]
    fn allowed_edges_examples() {
        let ids = |g: &Graph, ps: &[(u32, u32)]| -> BTreeSet<EdgeId> {
            ps.iter()
                .map(|&(a, b)| g.edges_between(VertexId(a), VertexId(b)).next().unwrap())
                .collect()
        };
        let p4 = catalog::p4();
        assert_eq!(allowed_edges(&p4).unwrap(), ids(&p4, &[(1, 2), (3, 4)]));
        let k4 = catalog::k4();
        assert_eq!(allowed_edges(&k4).unwrap().len(), 6);
        let paw = catalog::paw();
        assert_eq!(allowed_edges(&paw).unwrap(), ids(&paw, &[(1, 2), (3, 4)]));
        assert_eq!(allowed_edges(&catalog::p3()), Err(Error::NotFactorizable));
    }

    #[test]
    fn brick_examples() {
        assert!(is_brick(&catalog::k4()));
        assert!(!is_brick(&catalog::k33()));
        assert!(is_brick(&catalog::prism()));
        assert!(!is_brick(&catalog::c6()));
        assert!(is_brick(&catalog::w5()));
        assert!(is_brick(&catalog::petersen()));
        assert_eq!(brick_violation(&catalog::k33()), Some(Some((VertexId(1), VertexId(2)))));
    }

    #[test]
    fn matching_validation() {
        let p4 = catalog::p4();
        assert_eq!(
            Matching::from_pairs(&p4, &[(1, 2), (2, 3)]),
            Err(Error::NotAMatching(VertexId(2)))
        );
        let m = Matching::from_pairs(&p4, &[(1, 2)]).unwrap();
        assert_eq!(m.check_perfect(&p4), Err(Error::ImperfectMatching(VertexId(3))));
        assert_eq!(m.crossing_count(&p4, &vset([1])), 1);
        assert_eq!(perfect_matching_containing(&p4, EdgeId(1)).unwrap(), None);
    }
}
