//! Towers over factor-components, the adjacency between them, and the
//! M-arcs and tower-sequences built on top.
//!
//! The tower over `H` is `G[vupstar(H)]`. Two towers over incomparable
//! components are adjacent when they share vertices or an edge joins them;
//! a pair of classes `(S1, S2)` is a port pair of the adjacency when an edge
//! leaves `vupstar(S1)` into `vupstar(S2) ∖ vupstar(S1)`.
//!
//! Every function taking a [`Matching`] expects a perfect matching of the
//! decomposed graph.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use crate::altpath::{AltPath, Arc, PathKind};
use crate::canon::{CanonicalDecomposition, ClassRef, ComponentId, TpathVariant};
use crate::error::{certify, Error, Result};
use crate::graph::{EdgeId, VertexId, VertexSet};
use crate::matching::Matching;

/// One step of a tower-sequence: leave the tower over `from.component`
/// through class `from` and enter the next one through class `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TowerLink {
    pub from: ClassRef,
    pub to: ClassRef,
}

impl TowerLink {
    pub fn reversed(self) -> TowerLink {
        TowerLink { from: self.to, to: self.from }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerSequence {
    bases: Vec<ComponentId>,
    links: Vec<TowerLink>,
}

impl TowerSequence {
    pub fn single(h: ComponentId) -> Self {
        TowerSequence { bases: alloc::vec![h], links: Vec::new() }
    }

    /// Builds and validates a sequence from its links (at least one).
    pub fn from_links(d: &CanonicalDecomposition, links: Vec<TowerLink>) -> Result<Self> {
        let first = links.first().ok_or_else(|| Error::precondition("a sequence needs a link"))?;
        let mut bases = alloc::vec![first.from.component];
        bases.extend(links.iter().map(|l| l.to.component));
        let seq = TowerSequence { bases, links };
        seq.validate(d)?;
        Ok(seq)
    }

    /// Consecutive towers are adjacent through the stated ports, and every
    /// inner base is left through a class other than the one it was
    /// entered by.
    pub fn validate(&self, d: &CanonicalDecomposition) -> Result<()> {
        if self.bases.len() != self.links.len() + 1 {
            return Err(Error::precondition("bases and links do not line up"));
        }
        for h in &self.bases {
            d.component(*h)?;
        }
        for (i, l) in self.links.iter().enumerate() {
            if l.from.component != self.bases[i] || l.to.component != self.bases[i + 1] {
                return Err(Error::precondition(format!("link {i} does not join consecutive bases")));
            }
            d.class(l.from)?;
            d.class(l.to)?;
            if port_edge(d, l.from, l.to)?.is_none() {
                return Err(Error::precondition(format!(
                    "towers over {} and {} are not adjacent through the given ports",
                    l.from.component, l.to.component
                )));
            }
        }
        for w in self.links.windows(2) {
            if w[0].to == w[1].from {
                return Err(Error::precondition(format!(
                    "{} is entered and left through the same class",
                    w[0].to.component
                )));
            }
        }
        Ok(())
    }

    pub fn bases(&self) -> &[ComponentId] {
        &self.bases
    }

    pub fn links(&self) -> &[TowerLink] {
        &self.links
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn first(&self) -> ComponentId {
        self.bases[0]
    }

    pub fn last(&self) -> ComponentId {
        *self.bases.last().expect("sequences are non-empty")
    }

    pub fn reversed(&self) -> TowerSequence {
        let mut bases = self.bases.clone();
        bases.reverse();
        let links = self.links.iter().rev().map(|l| l.reversed()).collect();
        TowerSequence { bases, links }
    }

    /// Both end bases are borders.
    pub fn is_spanning(&self, d: &CanonicalDecomposition) -> Result<bool> {
        let b: BTreeSet<ComponentId> = borders(d)?.into_iter().map(|(h, _)| h).collect();
        Ok(b.contains(&self.first()) && b.contains(&self.last()))
    }

    fn contains(&self, h: ComponentId) -> bool {
        self.bases.contains(&h)
    }

    fn push(&mut self, link: TowerLink) {
        self.bases.push(link.to.component);
        self.links.push(link);
    }
}

/// The least edge `(a, b, e)` with `a ∈ vupstar(s1)` and
/// `b ∈ vupstar(s2) ∖ vupstar(s1)`, provided the components are distinct
/// and incomparable.
pub fn port_edge(
    d: &CanonicalDecomposition,
    s1: ClassRef,
    s2: ClassRef,
) -> Result<Option<(VertexId, VertexId, EdgeId)>> {
    if s1.component == s2.component || d.comparable(s1.component, s2.component) {
        return Ok(None);
    }
    let a = d.up_sets(s1)?.vupstar;
    let b = d.up_sets(s2)?.vupstar;
    let g = d.graph();
    let mut best: Option<(VertexId, VertexId, EdgeId)> = None;
    for &x in &a {
        for &(y, e) in g.incident(x) {
            if b.contains(&y) && !a.contains(&y) && best.is_none_or(|(_, _, f)| e < f) {
                best = Some((x, y, e));
            }
        }
    }
    Ok(best)
}

/// All port pairs `(S1, S2)` of adjacent towers, listed once with
/// `S1.component < S2.component`.
pub fn t_adjacency(d: &CanonicalDecomposition) -> Result<Vec<TowerLink>> {
    let mut out = Vec::new();
    let all: Vec<ClassRef> = class_refs(d);
    for &s1 in &all {
        for &s2 in &all {
            if s1.component < s2.component && port_edge(d, s1, s2)?.is_some() {
                out.push(TowerLink { from: s1, to: s2 });
            }
        }
    }
    Ok(out)
}

fn class_refs(d: &CanonicalDecomposition) -> Vec<ClassRef> {
    d.component_ids()
        .flat_map(|h| {
            let n = d.classes(h).map(|c| c.len()).unwrap_or(0);
            (0..n).map(move |index| ClassRef { component: h, index })
        })
        .collect()
}

/// Classes `S` of `h` with an edge from `vupstar(S)` to the outside of the
/// tower over `h`.
pub fn outward_classes(d: &CanonicalDecomposition, h: ComponentId) -> Result<Vec<ClassRef>> {
    let tower = d.vupstar(h)?;
    let g = d.graph();
    let mut out = Vec::new();
    for index in 0..d.classes(h)?.len() {
        let s = ClassRef { component: h, index };
        let region = d.up_sets(s)?.vupstar;
        if region.iter().any(|&x| g.incident(x).iter().any(|(y, _)| !tower.contains(y))) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Minimal components with at most one outward class, paired with that
/// class (their port) if there is one.
pub fn borders(d: &CanonicalDecomposition) -> Result<Vec<(ComponentId, Option<ClassRef>)>> {
    let mut out = Vec::new();
    for h in d.minimal() {
        match outward_classes(d, h)?.as_slice() {
            [] => out.push((h, None)),
            [s] => out.push((h, Some(*s))),
            _ => {}
        }
    }
    Ok(out)
}

/// Joins two vertex/edge walks sharing an end vertex.
pub(crate) fn join(
    (mut vs, mut es): (Vec<VertexId>, Vec<EdgeId>),
    (ws, fs): (&[VertexId], &[EdgeId]),
) -> (Vec<VertexId>, Vec<EdgeId>) {
    debug_assert_eq!(vs.last(), ws.first());
    vs.extend_from_slice(&ws[1..]);
    es.extend_from_slice(fs);
    (vs, es)
}

pub(crate) fn parts(p: &AltPath) -> (Vec<VertexId>, Vec<EdgeId>) {
    (p.vertices().to_vec(), p.edges().to_vec())
}

/// Checks the arc invariant, and for incomparable ends that the arc avoids
/// `vcoup` of both end classes.
pub fn check_arc(d: &CanonicalDecomposition, arc: &Arc) -> Result<()> {
    let (h1, h2) = arc.ends;
    let p = &arc.path;
    let fail = |why: &str| Err(Error::internal(format!("arc {:?}: {why}", p.vertices())));
    if h1 == h2 {
        return fail("ends lie in one component");
    }
    if p.kind() != PathKind::Exposed {
        return fail("not exposed");
    }
    let (v1, v2) = (d.vertices_of(h1)?, d.vertices_of(h2)?);
    if !v1.contains(&p.first()) || !v2.contains(&p.last()) {
        return fail("ends outside the named components");
    }
    let interior = &p.vertices()[1..p.vertices().len() - 1];
    if interior.iter().any(|v| v1.contains(v) || v2.contains(v)) {
        return fail("interior meets an end component");
    }
    if !d.comparable(h1, h2) {
        for end in [p.first(), p.last()] {
            let s = d.class_of(end).expect("end lies in a component");
            let coup = d.up_sets(s)?.vcoup;
            if p.vertices().iter().any(|v| coup.contains(v)) {
                return fail("meets vcoup of an end class");
            }
        }
    }
    Ok(())
}

/// An arc between the components of `s1` and `s2` with ends in `s1` and
/// `s2`, every other vertex in `vup(s1) ∪ vup(s2)`.
pub fn arc_from_adjacency(d: &CanonicalDecomposition, m: &Matching, s1: ClassRef, s2: ClassRef) -> Result<Arc> {
    let g = d.graph();
    m.check_perfect(g)?;
    let (a, b, e) = port_edge(d, s1, s2)?.ok_or_else(|| {
        Error::precondition(format!(
            "towers over {} and {} are not adjacent through these ports",
            s1.component, s2.component
        ))
    })?;
    let (h1, h2) = (s1.component, s2.component);
    if d.vupstar(h1)?.contains(&b) {
        return Err(Error::internal(format!("port edge end {b} lies in the tower over {h1}")));
    }
    let p1 = certify(d.tpath(m, h1, TpathVariant::UpToBase { x: a }), "balanced path into the first port")?;
    let p2 = certify(d.tpath(m, h2, TpathVariant::UpToBase { x: b }), "balanced path into the second port")?;
    if !d.class(s1)?.contains(&p1.last()) || !d.class(s2)?.contains(&p2.last()) {
        return Err(Error::internal("balanced path ends outside its port class"));
    }
    let on1 = p1.vertex_set();
    if p2.vertices().iter().any(|v| on1.contains(v)) {
        return Err(Error::internal(format!(
            "paths {:?} and {:?} into the ports intersect",
            p1.vertices(),
            p2.vertices()
        )));
    }
    let r1 = p1.reversed();
    let (mut vs, mut es) = parts(&r1);
    vs.push(b);
    es.push(e);
    let (vs, es) = join((vs, es), (p2.vertices(), p2.edges()));
    let path = certify(AltPath::new(g, m, vs, es), "arc from an adjacency")?;
    let arc = Arc { path, ends: (h1, h2) };
    check_arc(d, &arc)?;
    let mut allowed_inside = d.up_sets(s1)?.vup;
    allowed_inside.extend(d.up_sets(s2)?.vup);
    let vs = arc.vertices();
    if vs[1..vs.len() - 1].iter().any(|v| !allowed_inside.contains(v)) {
        return Err(Error::internal("arc leaves vup of its ports"));
    }
    Ok(arc)
}

/// An arc between the first and last base of a sequence over minimal
/// components, with ends in the first outgoing and last incoming ports,
/// traversing every inner base.
pub fn arc_from_sequence(d: &CanonicalDecomposition, m: &Matching, seq: &TowerSequence) -> Result<Arc> {
    seq.validate(d)?;
    if seq.len() < 2 {
        return Err(Error::precondition("an arc needs at least two bases"));
    }
    if let Some(h) = seq.bases().iter().find(|h| !d.is_minimal(**h)) {
        return Err(Error::precondition(format!("{h} is not minimal")));
    }
    let distinct: BTreeSet<ComponentId> = seq.bases().iter().copied().collect();
    if distinct.len() != seq.len() {
        return Err(Error::internal(format!("tower-sequence {:?} repeats a base", seq.bases())));
    }
    let g = d.graph();
    let links = seq.links();
    let mut arc = arc_from_adjacency(d, m, links[0].from, links[0].to)?;
    for i in 1..links.len() {
        let step = arc_from_adjacency(d, m, links[i].from, links[i].to)?;
        let t_hat = arc.path.last();
        let s = step.path.first();
        let q = certify(
            d.tpath(m, seq.bases()[i], TpathVariant::BaseToBase { x: t_hat, y: s }),
            "connector through an inner base",
        )?;
        let q_hat = join(parts(&q), (step.path.vertices(), step.path.edges()));
        let before = arc.path.vertex_set();
        let shared: Vec<VertexId> = q_hat.0.iter().copied().filter(|v| before.contains(v)).collect();
        if shared != [t_hat] {
            return Err(Error::internal(format!(
                "extension through {} shares {shared:?} with the previous arc",
                seq.bases()[i]
            )));
        }
        let (vs, es) = join(parts(&arc.path), (&q_hat.0, &q_hat.1));
        let path = certify(AltPath::new(g, m, vs, es), "arc along a tower-sequence")?;
        arc = Arc { path, ends: (seq.first(), seq.bases()[i + 1]) };
        check_arc(d, &arc)?;
    }
    for h in &seq.bases()[1..seq.len() - 1] {
        let hv = d.vertices_of(*h)?;
        if !arc.vertices().iter().any(|v| hv.contains(v)) {
            return Err(Error::internal(format!("arc misses inner base {h}")));
        }
    }
    Ok(arc)
}

/// Port pairs in both orientations between minimal components.
fn minimal_links(d: &CanonicalDecomposition) -> Result<Vec<TowerLink>> {
    let pmin: BTreeSet<ComponentId> = d.minimal().into_iter().collect();
    let mut out: Vec<TowerLink> = t_adjacency(d)?
        .into_iter()
        .filter(|l| pmin.contains(&l.from.component) && pmin.contains(&l.to.component))
        .flat_map(|l| [l, l.reversed()])
        .collect();
    out.sort();
    Ok(out)
}

/// Extends a sequence over minimal components at both ends until each end
/// is a border attached through its port. A single base that is a border
/// with a port is still extended, so that an arc exists.
pub fn extend_to_spanning_sequence(d: &CanonicalDecomposition, seq: &TowerSequence) -> Result<TowerSequence> {
    seq.validate(d)?;
    if let Some(h) = seq.bases().iter().find(|h| !d.is_minimal(**h)) {
        return Err(Error::precondition(format!("{h} is not minimal")));
    }
    let ports: BTreeMap<ComponentId, Option<ClassRef>> = borders(d)?.into_iter().collect();
    let links = minimal_links(d)?;
    let limit = d.minimal().len();
    let mut seq = seq.clone();
    for _ in 0..2 {
        loop {
            let end = seq.last();
            let entry = seq.links.last().map(|l| l.to);
            let port = ports.get(&end);
            let done = match (port, entry) {
                (Some(None), _) => true,
                (Some(Some(p)), Some(e)) => *p == e,
                _ => false,
            };
            if done {
                break;
            }
            if seq.len() > limit {
                return Err(Error::internal("tower-sequence outgrew the minimal components"));
            }
            let usable = |l: &&TowerLink| {
                l.from.component == end
                    && Some(l.from) != entry
                    && port.is_none_or(|p| *p == Some(l.from))
            };
            let next = links
                .iter()
                .filter(usable)
                .find(|l| !seq.contains(l.to.component))
                .or_else(|| links.iter().find(usable))
                .copied()
                .ok_or_else(|| Error::internal(format!("no tower adjacent to {end} through a free port")))?;
            if seq.contains(next.to.component) {
                return Err(Error::internal(format!(
                    "extending {:?} would repeat {}",
                    seq.bases(),
                    next.to.component
                )));
            }
            seq.push(next);
        }
        seq = seq.reversed();
    }
    seq.validate(d)?;
    Ok(seq)
}

/// A spanning arc meeting `h`, built from a spanning sequence through `h`.
pub fn spanning_arc_through(d: &CanonicalDecomposition, m: &Matching, h: ComponentId) -> Result<Arc> {
    if !d.is_minimal(h) {
        return Err(Error::precondition(format!("{h} is not minimal")));
    }
    let seq = extend_to_spanning_sequence(d, &TowerSequence::single(h))?;
    if seq.len() < 2 {
        return Err(Error::precondition(format!("{h} is the only tower; no spanning arc exists")));
    }
    let arc = arc_from_sequence(d, m, &seq)?;
    let hv = d.vertices_of(h)?;
    if !arc.vertices().iter().any(|v| hv.contains(v)) {
        return Err(Error::internal(format!("spanning arc misses {h}")));
    }
    Ok(arc)
}

/// Shortest sequence from a border inside `from` to a border inside `to`,
/// each end attached through its port.
pub fn spanning_sequence_across(
    d: &CanonicalDecomposition,
    from: &VertexSet,
    to: &VertexSet,
) -> Result<Option<TowerSequence>> {
    let links = minimal_links(d)?;
    let ports: BTreeMap<ComponentId, Option<ClassRef>> = borders(d)?.into_iter().collect();
    type State = (ComponentId, Option<ClassRef>);
    let mut parent: BTreeMap<State, (State, TowerLink)> = BTreeMap::new();
    let mut seen: BTreeSet<State> = BTreeSet::new();
    let mut queue: VecDeque<State> = VecDeque::new();
    for (&h, port) in &ports {
        if port.is_some() && d.vertices_of(h)?.is_subset(from) {
            seen.insert((h, None));
            queue.push_back((h, None));
        }
    }
    while let Some(state) = queue.pop_front() {
        let (h, entry) = state;
        if let (Some(e), Some(Some(p))) = (entry, ports.get(&h)) {
            if *p == e && d.vertices_of(h)?.is_subset(to) {
                let mut rev = Vec::new();
                let mut cur = state;
                while let Some((prev, link)) = parent.get(&cur) {
                    rev.push(*link);
                    cur = *prev;
                }
                rev.reverse();
                let seq = TowerSequence::from_links(d, rev)?;
                let distinct: BTreeSet<ComponentId> = seq.bases().iter().copied().collect();
                if distinct.len() != seq.len() {
                    return Err(Error::internal(format!("tower-sequence {:?} repeats a base", seq.bases())));
                }
                return Ok(Some(seq));
            }
        }
        for l in links.iter().filter(|l| l.from.component == h) {
            let ok = match entry {
                None => ports.get(&h).copied().flatten() == Some(l.from),
                Some(e) => e != l.from,
            };
            let next = (l.to.component, Some(l.to));
            if ok && seen.insert(next) {
                parent.insert(next, (state, *l));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph::{vset, Graph};

    fn setup(g: &Graph) -> (CanonicalDecomposition, Matching) {
        let d = CanonicalDecomposition::new(g).unwrap();
        let m = crate::matching::find_perfect_matching(g).unwrap();
        (d, m)
    }

    fn cref(h: usize, index: usize) -> ClassRef {
        ClassRef { component: ComponentId(h), index }
    }

    #[test]
    fn adjacency_examples() {
        let (p4, _) = setup(&catalog::p4());
        assert_eq!(t_adjacency(&p4).unwrap(), [TowerLink { from: cref(0, 1), to: cref(1, 0) }]);
        let (k4, _) = setup(&catalog::k4());
        assert!(t_adjacency(&k4).unwrap().is_empty());
        let (paw, _) = setup(&catalog::paw());
        assert!(t_adjacency(&paw).unwrap().is_empty());
    }

    #[test]
    fn border_examples() {
        let (p4, _) = setup(&catalog::p4());
        assert_eq!(
            borders(&p4).unwrap(),
            [(ComponentId(0), Some(cref(0, 1))), (ComponentId(1), Some(cref(1, 0)))]
        );
        let (k4, _) = setup(&catalog::k4());
        assert_eq!(borders(&k4).unwrap(), [(ComponentId(0), None)]);
        let (paw, _) = setup(&catalog::paw());
        assert_eq!(borders(&paw).unwrap(), [(ComponentId(0), None)]);
    }

    #[test]
    fn p4_arcs() {
        let g = catalog::p4();
        let (d, m) = setup(&g);
        let arc = arc_from_adjacency(&d, &m, cref(0, 1), cref(1, 0)).unwrap();
        assert_eq!(arc.vertices(), [VertexId(2), VertexId(3)]);
        assert_eq!(arc.ends, (ComponentId(0), ComponentId(1)));
        let seq = TowerSequence::from_links(&d, alloc::vec![TowerLink { from: cref(0, 1), to: cref(1, 0) }]).unwrap();
        assert_eq!(arc_from_sequence(&d, &m, &seq).unwrap(), arc);
        let span = extend_to_spanning_sequence(&d, &TowerSequence::single(ComponentId(0))).unwrap();
        assert_eq!(span.bases(), [ComponentId(0), ComponentId(1)]);
        assert!(span.is_spanning(&d).unwrap());
        assert_eq!(extend_to_spanning_sequence(&d, &span).unwrap(), span);
        let through = spanning_arc_through(&d, &m, ComponentId(0)).unwrap();
        assert_eq!(through.vertices(), [VertexId(2), VertexId(3)]);
        assert!(arc_from_adjacency(&d, &m, cref(0, 0), cref(1, 0)).is_err());
    }

    #[test]
    fn single_tower_has_no_spanning_arc() {
        let g = catalog::k4();
        let (d, m) = setup(&g);
        assert!(matches!(spanning_arc_through(&d, &m, ComponentId(0)), Err(Error::Precondition(_))));
    }

    #[test]
    fn longer_sequence() {
        // three edges 12, 34, 56 in a row joined by 23 and 45
        let g = Graph::from_edges(1..=6, &[(1, 2), (3, 4), (5, 6), (2, 3), (4, 5)]).unwrap();
        let (d, m) = setup(&g);
        assert_eq!(d.minimal().len(), 3);
        let seq = extend_to_spanning_sequence(&d, &TowerSequence::single(ComponentId(1))).unwrap();
        assert_eq!(seq.len(), 3);
        assert!(seq.is_spanning(&d).unwrap());
        let arc = arc_from_sequence(&d, &m, &seq).unwrap();
        let mut ends = [arc.path.first(), arc.path.last()];
        ends.sort();
        assert_eq!(ends, [VertexId(2), VertexId(5)]);
        assert_eq!(arc.path.vertex_set(), vset([2, 3, 4, 5]));
        let across = spanning_sequence_across(&d, &vset([1, 2]), &vset([5, 6])).unwrap().unwrap();
        assert_eq!(across.bases(), [ComponentId(0), ComponentId(1), ComponentId(2)]);
        assert!(spanning_sequence_across(&d, &vset([1, 2]), &vset([3, 4])).unwrap().is_none());
    }

    #[test]
    fn invalid_sequences_rejected() {
        let g = catalog::p4();
        let (d, _) = setup(&g);
        let bad = TowerSequence::from_links(&d, alloc::vec![TowerLink { from: cref(0, 0), to: cref(1, 1) }]);
        assert!(matches!(bad, Err(Error::Precondition(_))));
    }
}
