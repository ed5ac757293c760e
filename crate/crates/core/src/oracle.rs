//! Brute-force oracles, random instances, and the invariant checks that
//! compare the library against them.
//!
//! Everything here enumerates perfect matchings or vertex subsets outright,
//! so it is only meant for small graphs; the enumeration bound guards
//! against accidental blow-ups.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::altpath::{saturated_path, visit_ears, PathKind};
use crate::canon::{CanonicalDecomposition, ClassRef, ComponentId, TpathVariant};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId, VertexSet};
use crate::matching::{is_brick, is_factorizable, Matching};

pub const DEFAULT_ENUM_BOUND: usize = 16;

fn check_bound(g: &Graph, bound: usize) -> Result<()> {
    let order = g.vertex_count();
    if order > bound {
        return Err(Error::SizeBound { order, bound });
    }
    Ok(())
}

/// Every perfect matching of `g`, by backtracking on the least uncovered
/// vertex and trying its edges in id order.
pub fn enumerate_perfect_matchings(g: &Graph, bound: usize) -> Result<Vec<Matching>> {
    check_bound(g, bound)?;
    let mut out = Vec::new();
    if g.vertex_count() % 2 == 1 {
        return Ok(out);
    }
    let mut chosen = Vec::new();
    let mut covered = VertexSet::new();
    let _ = backtrack(g, &mut covered, &mut chosen, &mut |es| {
        out.push(Matching::from_edges(g, es.iter().copied()).expect("disjoint by construction"));
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Whether `g` has a perfect matching, by the same backtracking.
pub fn has_perfect_matching_bruteforce(g: &Graph) -> bool {
    if g.vertex_count() % 2 == 1 {
        return false;
    }
    let mut found = false;
    let _ = backtrack(g, &mut VertexSet::new(), &mut Vec::new(), &mut |_| {
        found = true;
        ControlFlow::Break(())
    });
    found
}

fn backtrack<F>(g: &Graph, covered: &mut VertexSet, chosen: &mut Vec<EdgeId>, emit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[EdgeId]) -> ControlFlow<()>,
{
    let Some(v) = g.vertices().find(|v| !covered.contains(v)) else {
        return emit(chosen);
    };
    let mut inc: Vec<(EdgeId, VertexId)> = g.incident(v).iter().map(|&(w, e)| (e, w)).collect();
    inc.sort();
    covered.insert(v);
    for (e, w) in inc {
        if covered.contains(&w) {
            continue;
        }
        covered.insert(w);
        chosen.push(e);
        let r = backtrack(g, covered, chosen, emit);
        chosen.pop();
        covered.remove(&w);
        if r.is_break() {
            covered.remove(&v);
            return r;
        }
    }
    covered.remove(&v);
    ControlFlow::Continue(())
}

pub fn is_star_shore(shore: &VertexSet, order: usize) -> bool {
    shore.len() == 1 || shore.len() + 1 == order
}

/// All proper non-empty shores containing the least vertex, in mask order.
pub fn canonical_shores(g: &Graph, bound: usize) -> Result<Vec<VertexSet>> {
    check_bound(g, bound)?;
    let vs: Vec<VertexId> = g.vertices().collect();
    let n = vs.len();
    if n < 2 {
        return Ok(Vec::new());
    }
    let full = (1u64 << n) - 1;
    Ok((0..full)
        .filter(|mask| mask & 1 == 1)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| vs[i]).collect())
        .collect())
}

/// Shores (up to complement) met exactly once by every perfect matching.
pub fn tight_cuts_bruteforce(g: &Graph, bound: usize) -> Result<Vec<VertexSet>> {
    let matchings = enumerate_perfect_matchings(g, bound)?;
    if matchings.is_empty() {
        return Err(Error::NotFactorizable);
    }
    Ok(canonical_shores(g, bound)?
        .into_iter()
        .filter(|s| s.len() % 2 == 1)
        .filter(|s| matchings.iter().all(|m| m.crossing_count(g, s) == 1))
        .collect())
}

/// A planted perfect matching on `1..=n` plus each other pair with
/// probability `p`.
pub fn random_factorizable_graph(n: u32, p: f64, seed: u64) -> Result<Graph> {
    if n % 2 == 1 {
        return Err(Error::OddOrder(n as usize));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::precondition(format!("edge probability {p} is outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<u32> = (1..=n).collect();
    order.shuffle(&mut rng);
    let planted: BTreeSet<(u32, u32)> = order
        .chunks(2)
        .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
        .collect();
    let mut edges = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            if planted.contains(&(a, b)) || rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(1..=n, &edges)
}

/// One corpus entry: the generator parameters and the graph.
#[derive(Clone, Debug)]
pub struct Instance {
    pub n: u32,
    pub p: f64,
    pub seed: u64,
    pub graph: Graph,
}

/// `count` instances cycling through even orders up to `max_n` and the edge
/// probabilities 0.1, 0.3, 0.6, seeded `seed_base + i`.
pub fn random_corpus(count: usize, max_n: u32, seed_base: u64) -> Vec<Instance> {
    let orders: Vec<u32> = (2..=max_n / 2).map(|k| 2 * k).collect();
    let probs = [0.1, 0.3, 0.6];
    (0..count)
        .map(|i| {
            let n = orders[i % orders.len()];
            let p = probs[i % probs.len()];
            let seed = seed_base + i as u64;
            let graph = random_factorizable_graph(n, p, seed).expect("even order, valid p");
            Instance { n, p, seed, graph }
        })
        .collect()
}

/// Factor-components as the connected pieces of the union of all
/// enumerated perfect matchings.
pub fn factor_components_by_enumeration(g: &Graph, bound: usize) -> Result<Vec<VertexSet>> {
    let matchings = enumerate_perfect_matchings(g, bound)?;
    if matchings.is_empty() {
        return Err(Error::NotFactorizable);
    }
    let used: BTreeSet<EdgeId> = matchings.iter().flat_map(|m| m.edges()).collect();
    let mut skeleton = Graph::new();
    for v in g.vertices() {
        skeleton.add_vertex(v);
    }
    for e in g.edges().filter(|e| used.contains(&e.id)) {
        skeleton.insert_edge(e.id, e.u, e.v)?;
    }
    Ok(skeleton.connected_components())
}

/// `comps[i] ⪯ comps[j]` by trying every union of components and testing
/// factor-criticality of the contraction with brute-force matchings.
pub fn leq_by_enumeration(g: &Graph, comps: &[VertexSet], i: usize, j: usize) -> Result<bool> {
    if i >= comps.len() || j >= comps.len() {
        return Err(Error::InvalidComponent(i.max(j)));
    }
    if i == j {
        return Ok(true);
    }
    let rest: Vec<usize> = (0..comps.len()).filter(|&c| c != i && c != j).collect();
    for mask in 0u64..(1u64 << rest.len()) {
        let mut x: VertexSet = comps[i].union(&comps[j]).copied().collect();
        for (bit, &c) in rest.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                x.extend(comps[c].iter().copied());
            }
        }
        let sub = g.induced_subgraph(&x)?;
        let (q, _) = sub.contract_with_representative(&comps[i])?;
        let critical = q.vertices().all(|w| {
            let mut keep = q.vertex_set();
            keep.remove(&w);
            has_perfect_matching_bruteforce(&q.induced_subgraph(&keep).expect("subset"))
        });
        if critical {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Outcome of one family of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckTally {
    pub name: String,
    pub checked: usize,
    pub violations: Vec<String>,
    /// Violations that surfaced as internal errors.
    pub internal: usize,
}

impl CheckTally {
    pub fn new(name: &str) -> Self {
        CheckTally { name: name.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }

    pub fn error(&mut self, context: &str, e: &Error) {
        self.checked += 1;
        if e.is_internal() {
            self.internal += 1;
        }
        self.violations.push(format!("{context}: {e}"));
    }

    pub fn absorb(&mut self, other: CheckTally) {
        self.checked += other.checked;
        self.internal += other.internal;
        self.violations.extend(other.violations);
    }
}

/// Allowed edges against the union of all perfect matchings, and the
/// brick implications.
pub fn check_matching_kernel(g: &Graph, bound: usize) -> Result<CheckTally> {
    let mut t = CheckTally::new("matching kernel");
    let matchings = enumerate_perfect_matchings(g, bound)?;
    let union: BTreeSet<EdgeId> = matchings.iter().flat_map(|m| m.edges()).collect();
    match crate::matching::allowed_edges(g) {
        Ok(allowed) => t.record(allowed == union, || format!("allowed edges {allowed:?} vs union {union:?}")),
        Err(e) => t.record(matchings.is_empty(), || format!("allowed edges failed: {e}")),
    }
    t.record(is_factorizable(g) == !matchings.is_empty(), || "factorizability disagrees".into());
    if is_brick(g) {
        t.record(g.is_three_connected(), || "brick is not 3-connected".into());
        t.record(union.len() == g.edge_count(), || "brick has a non-allowed edge".into());
    }
    Ok(t)
}

/// The structural theorems of the decomposition, against independent
/// oracles: components, `⪯` as a partial order agreeing with the
/// enumerated definition, `∼` as an equivalence matching its definition,
/// unique tags, and the partition of each tower by class regions.
pub fn check_decomposition(g: &Graph, bound: usize) -> Result<CheckTally> {
    let mut t = CheckTally::new("canonical decomposition");
    let d = match CanonicalDecomposition::new(g) {
        Ok(d) => d,
        Err(e) => {
            t.error("building the decomposition", &e);
            return Ok(t);
        }
    };
    let comps = factor_components_by_enumeration(g, bound)?;
    let ours: Vec<VertexSet> = d.components().iter().map(|c| c.vertices.clone()).collect();
    t.record(ours == comps, || format!("components {ours:?} vs {comps:?}"));
    let k = ours.len();
    let ids: Vec<ComponentId> = d.component_ids().collect();
    for &a in &ids {
        t.record(d.leq(a, a)?, || format!("{a} ⪯ {a} fails"));
        for &b in &ids {
            let ab = d.leq(a, b)?;
            if a != b {
                t.record(!(ab && d.leq(b, a)?), || format!("{a} and {b} are mutually ⪯"));
                let oracle = leq_by_enumeration(g, &ours, a.0, b.0)?;
                t.record(ab == oracle, || format!("{a} ⪯ {b}: {ab}, oracle says {oracle}"));
            }
            for &c in &ids {
                t.record(!(ab && d.leq(b, c)? && !d.leq(a, c)?), || {
                    format!("⪯ not transitive on {a}, {b}, {c}")
                });
            }
        }
    }
    for h in 0..k {
        let hv = &ours[h];
        let h_id = ComponentId(h);
        let related = |a: VertexId, b: VertexId| {
            let mut keep = g.vertex_set();
            keep.remove(&a);
            keep.remove(&b);
            !has_perfect_matching_bruteforce(&g.induced_subgraph(&keep).expect("subset"))
        };
        let members: Vec<VertexId> = hv.iter().copied().collect();
        let mut rel = BTreeSet::new();
        for &a in &members {
            for &b in &members {
                if a != b && related(a, b) {
                    rel.insert((a, b));
                }
            }
        }
        for &a in &members {
            for &b in &members {
                for &c in &members {
                    if a != c && rel.contains(&(a, b)) && rel.contains(&(b, c)) {
                        t.record(rel.contains(&(a, c)), || format!("∼ not transitive on {a}, {b}, {c}"));
                    }
                }
                if a != b {
                    let same = d.class_of(a) == d.class_of(b);
                    t.record(same == rel.contains(&(a, b)), || format!("class of {a}, {b} disagrees with ∼"));
                }
            }
        }
        let classes = d.classes(h_id)?;
        let up = d.vup(h_id)?;
        for piece in g.induced_subgraph(&up)?.connected_components() {
            let attach: VertexSet = g.neighborhood(&piece).intersection(hv).copied().collect();
            let holders = classes.iter().filter(|c| attach.is_subset(c)).count();
            t.record(!attach.is_empty() && holders == 1, || {
                format!("piece {piece:?} over {h_id} attaches to {attach:?}, held by {holders} classes")
            });
        }
        let tower = d.vupstar(h_id)?;
        let mut seen = VertexSet::new();
        let mut disjoint = true;
        for index in 0..classes.len() {
            let region = d.up_sets(ClassRef { component: h_id, index })?.vupstar;
            disjoint &= seen.is_disjoint(&region);
            seen.extend(region);
        }
        t.record(disjoint && seen == tower, || format!("class regions do not partition the tower over {h_id}"));
    }
    Ok(t)
}

/// Saturated path between `x` and `y` exists iff `g - x - y` is
/// factorizable, for every pair; found paths are checked for kind and ends.
pub fn check_saturated_paths(g: &Graph, m: &Matching) -> CheckTally {
    let mut t = CheckTally::new("saturated paths");
    let vs: Vec<VertexId> = g.vertices().collect();
    for (i, &x) in vs.iter().enumerate() {
        for &y in &vs[i + 1..] {
            let expect = is_factorizable(&g.without(&[x, y]));
            match saturated_path(g, m, x, y) {
                Ok(found) => {
                    let good = match &found {
                        Some(p) => expect && p.kind() == PathKind::Saturated && p.first() == x && p.last() == y,
                        None => !expect,
                    };
                    t.record(good, || format!("pair ({x}, {y}): expected {expect}, got {found:?}"));
                }
                Err(e) => t.error(&format!("pair ({x}, {y})"), &e),
            }
        }
    }
    t
}

/// Every variant of the tower path construction for every component,
/// class pair and admissible endpoints, checked for kind, ends and
/// confinement.
pub fn check_tpaths(d: &CanonicalDecomposition, m: &Matching) -> CheckTally {
    let mut t = CheckTally::new("tower paths");
    for h in d.component_ids() {
        if let Err(e) = tpaths_for(d, m, h, &mut t) {
            t.error(&format!("component {h}"), &e);
        }
    }
    t
}

fn tpaths_for(d: &CanonicalDecomposition, m: &Matching, h: ComponentId, t: &mut CheckTally) -> Result<()> {
    let tower = d.vupstar(h)?;
    let n = d.classes(h)?.len();
    let refs: Vec<ClassRef> = (0..n).map(|index| ClassRef { component: h, index }).collect();
    let sets = refs.iter().map(|s| d.up_sets(*s)).collect::<Result<Vec<_>>>()?;
    let within = |p: &crate::altpath::AltPath, w: &VertexSet| p.vertices().iter().all(|v| w.contains(v));
    let run = |variant: TpathVariant, t: &mut CheckTally, ok: &dyn Fn(&crate::altpath::AltPath) -> bool| {
        match d.tpath(m, h, variant) {
            Ok(p) => t.record(ok(&p), || format!("{variant:?} over {h} gave {:?}", p.vertices())),
            Err(e) => t.error(&format!("{variant:?} over {h}"), &e),
        }
    };
    for (i, si) in sets.iter().enumerate() {
        let s_class = d.class(refs[i])?;
        for &x in &si.vupstar {
            run(TpathVariant::UpToBase { x }, t, &|p| {
                let y = p.last();
                s_class.contains(&y)
                    && p.is_balanced(x, y)
                    && p.vertices().iter().all(|v| *v == y || si.vup.contains(v))
            });
        }
        let not_up_s: VertexSet = tower.difference(&si.vup).copied().collect();
        for &x in s_class {
            for &y in &si.vcoup {
                run(TpathVariant::BaseToCoup { x, y }, t, &|p| {
                    p.kind() == PathKind::Saturated && p.first() == x && p.last() == y && within(p, &not_up_s)
                });
            }
        }
        for (j, sj) in sets.iter().enumerate() {
            if i == j {
                continue;
            }
            let t_class = d.class(refs[j])?;
            let w: VertexSet = not_up_s.difference(&sj.vup).copied().collect();
            for &x in s_class {
                for &y in t_class {
                    run(TpathVariant::BaseToBase { x, y }, t, &|p| {
                        p.kind() == PathKind::Saturated && p.first() == x && p.last() == y && within(p, &w)
                    });
                }
            }
            for &x in &si.vupstar {
                for &y in &sj.vupstar {
                    run(TpathVariant::UpToUp { x, y }, t, &|p| {
                        p.kind() == PathKind::Saturated && p.first() == x && p.last() == y && within(p, &tower)
                    });
                }
            }
        }
    }
    Ok(())
}

/// No ear relative to a tower has an interior, found by enumerating every
/// ear relative to each tower's vertex set.
pub fn check_tower_relative(d: &CanonicalDecomposition, m: &Matching) -> CheckTally {
    let mut t = CheckTally::new("ears relative to towers");
    let g = d.graph();
    for h in d.component_ids() {
        let tower = match d.vupstar(h) {
            Ok(x) => x,
            Err(e) => {
                t.error(&format!("tower over {h}"), &e);
                continue;
            }
        };
        let _ = visit_ears(g, m, &tower, |vs, _| {
            t.record(vs.len() == 2, || format!("ear {vs:?} relative to the tower over {h}"));
            ControlFlow::Continue(())
        });
    }
    t
}

/// An ear relative to `H1` traversing `H2` forces `H1 ⪯ H2`.
pub fn check_ear_order(d: &CanonicalDecomposition, m: &Matching) -> CheckTally {
    let mut t = CheckTally::new("ears and the order");
    let g = d.graph();
    for h1 in d.component_ids() {
        let anchor = d.vertices_of(h1).expect("valid id").clone();
        let _ = visit_ears(g, m, &anchor, |vs, _| {
            let hit: BTreeSet<ComponentId> = vs[1..vs.len() - 1].iter().filter_map(|v| d.component_of(*v)).collect();
            for h2 in hit {
                t.record(d.leq(h1, h2).unwrap_or(false), || format!("ear {vs:?} from {h1} crosses {h2}"));
            }
            ControlFlow::Continue(())
        });
    }
    t
}

/// Every check above on one graph, with the matching found by the library.
pub fn verify_all(g: &Graph, bound: usize) -> Result<Vec<CheckTally>> {
    check_bound(g, bound)?;
    let m = crate::matching::find_perfect_matching(g).ok_or(Error::NotFactorizable)?;
    let mut out = alloc::vec![check_matching_kernel(g, bound)?, check_decomposition(g, bound)?];
    out.push(check_saturated_paths(g, &m));
    match CanonicalDecomposition::new(g) {
        Ok(d) => {
            out.push(check_tpaths(&d, &m));
            out.push(check_tower_relative(&d, &m));
            out.push(check_ear_order(&d, &m));
        }
        Err(e) => {
            let mut t = CheckTally::new("decomposition-based checks");
            t.error("building the decomposition", &e);
            out.push(t);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph::vset;

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_perfect_matchings(&catalog::k4(), 16).unwrap().len(), 3);
        let p4 = catalog::p4();
        let ms = enumerate_perfect_matchings(&p4, 16).unwrap();
        assert_eq!(ms, [Matching::from_pairs(&p4, &[(1, 2), (3, 4)]).unwrap()]);
        assert!(enumerate_perfect_matchings(&catalog::p3(), 16).unwrap().is_empty());
        assert_eq!(enumerate_perfect_matchings(&catalog::petersen(), 16).unwrap().len(), 6);
        assert_eq!(
            enumerate_perfect_matchings(&catalog::petersen(), 8),
            Err(Error::SizeBound { order: 10, bound: 8 })
        );
    }

    #[test]
    fn tight_cut_examples() {
        let k4 = tight_cuts_bruteforce(&catalog::k4(), 16).unwrap();
        assert_eq!(k4, [vset([1]), vset([1, 2, 3]), vset([1, 2, 4]), vset([1, 3, 4])]);
        let prism = tight_cuts_bruteforce(&catalog::prism(), 16).unwrap();
        assert_eq!(prism.len(), 6);
        assert!(prism.iter().all(|s| is_star_shore(s, 6)));
        let c6 = tight_cuts_bruteforce(&catalog::c6(), 16).unwrap();
        assert!(c6.iter().any(|s| !is_star_shore(s, 6)));
        assert_eq!(tight_cuts_bruteforce(&catalog::triangle(), 16), Err(Error::NotFactorizable));
    }

    #[test]
    fn generator_examples() {
        let sparse = random_factorizable_graph(8, 0.0, 3).unwrap();
        assert_eq!(sparse.edge_count(), 4);
        assert_eq!(crate::canon::factor_components(&sparse).unwrap().len(), 4);
        let dense = random_factorizable_graph(6, 1.0, 3).unwrap();
        assert_eq!(dense.edge_count(), 15);
        for seed in 0..20 {
            let g = random_factorizable_graph(10, 0.3, seed).unwrap();
            assert!(is_factorizable(&g));
            assert_eq!(g, random_factorizable_graph(10, 0.3, seed).unwrap());
        }
        assert_eq!(random_factorizable_graph(5, 0.5, 0), Err(Error::OddOrder(5)));
        assert!(random_factorizable_graph(4, 1.5, 0).is_err());
    }

    #[test]
    fn leq_oracle_matches_examples() {
        let paw = catalog::paw();
        let comps = factor_components_by_enumeration(&paw, 16).unwrap();
        assert_eq!(comps, [vset([1, 2]), vset([3, 4])]);
        assert!(leq_by_enumeration(&paw, &comps, 0, 1).unwrap());
        assert!(!leq_by_enumeration(&paw, &comps, 1, 0).unwrap());
        let p4 = catalog::p4();
        let comps = factor_components_by_enumeration(&p4, 16).unwrap();
        assert!(!leq_by_enumeration(&p4, &comps, 0, 1).unwrap());
    }

    #[test]
    fn catalog_passes_every_check() {
        for name in ["p4", "paw", "c6", "k4", "k33", "prism", "w5"] {
            let g = catalog::by_name(name).unwrap();
            for tally in verify_all(&g, 16).unwrap() {
                assert!(tally.passed(), "{name}: {}: {:?}", tally.name, tally.violations);
            }
        }
    }
}
