//! The canonical decomposition of a factorizable graph.
//!
//! A factorizable graph splits into *factor-components*: the subgraphs
//! induced by the connected components of the union of all perfect
//! matchings. The components carry a partial order `⪯` (`H ⪯ I` when some
//! union of components containing both, contracted along `H`, is
//! factor-critical), and each component's vertices are partitioned into the
//! classes of `u ∼ v ⇔ G - u - v` has no perfect matching. Every connected
//! piece of the region strictly above a component attaches to exactly one of
//! its classes; those attachments are recorded as tags.
//!
//! All of it is computed from the definitions, and the structural theorems
//! (partial order, equivalence, unique tagging) are checked as the
//! decomposition is built. A failed check is reported as
//! [`Error::Internal`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::altpath::{balanced_path, saturated_path, AltPath, PathKind};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId, VertexSet};
use crate::matching::{allowed_edges, is_factor_critical, Matching, PairOracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentId(pub usize);

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{}", self.0)
    }
}

/// A Kotzig-Lovász class: the `index`-th class of `component`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassRef {
    pub component: ComponentId,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorComponent {
    pub id: ComponentId,
    pub vertices: VertexSet,
    pub subgraph: Graph,
}

/// A connected component of `G[vup(H)]` and the class of `H` it attaches to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperTag {
    pub vertices: VertexSet,
    pub class: usize,
}

/// The vertex sets hanging off one class `S` of a component `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpSets {
    /// `S` together with every upper piece tagged to `S`.
    pub vupstar: VertexSet,
    /// `vupstar ∖ S`.
    pub vup: VertexSet,
    /// The rest of the tower over `H`: `vupstar(H) ∖ vupstar`.
    pub vcoup: VertexSet,
}

/// Which constructive path to build inside the tower over a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TpathVariant {
    /// Balanced path from `x ∈ vupstar(S)` to some vertex of `S`, every other
    /// vertex in `vup(S)`.
    UpToBase { x: VertexId },
    /// Saturated path between `x ∈ S` and `y ∈ T`, `S ≠ T`, avoiding
    /// `vup(S) ∪ vup(T)`.
    BaseToBase { x: VertexId, y: VertexId },
    /// Saturated path between `x ∈ S` and `y ∈ vcoup(S)`, avoiding `vup(S)`.
    BaseToCoup { x: VertexId, y: VertexId },
    /// Saturated path between `x ∈ vupstar(S)` and `y ∈ vupstar(T)`,
    /// `S ≠ T`, inside the tower.
    UpToUp { x: VertexId, y: VertexId },
}

/// Factor-components ordered by least vertex id.
pub fn factor_components(g: &Graph) -> Result<Vec<FactorComponent>> {
    let allowed = allowed_edges(g)?;
    Ok(components_from_allowed(g, &allowed))
}

fn components_from_allowed(g: &Graph, allowed: &BTreeSet<EdgeId>) -> Vec<FactorComponent> {
    let mut skeleton = Graph::new();
    for v in g.vertices() {
        skeleton.add_vertex(v);
    }
    for e in g.edges().filter(|e| allowed.contains(&e.id)) {
        skeleton.insert_edge(e.id, e.u, e.v).expect("subgraph of g");
    }
    skeleton
        .connected_components()
        .into_iter()
        .enumerate()
        .map(|(i, vertices)| FactorComponent {
            id: ComponentId(i),
            subgraph: g.induced_unchecked(&vertices),
            vertices,
        })
        .collect()
}

/// `h1 ⪯ h2` straight from the definition: some union `X` of component
/// vertex sets containing both has `G[X] / V(h1)` factor-critical.
///
/// Exponential in the number of components.
pub fn leq_by_definition(g: &Graph, comps: &[FactorComponent], h1: ComponentId, h2: ComponentId) -> Result<bool> {
    let k = comps.len();
    for h in [h1, h2] {
        if h.0 >= k {
            return Err(Error::InvalidComponent(h.0));
        }
    }
    if h1 == h2 {
        return Ok(true);
    }
    let others: Vec<usize> = (0..k).filter(|&c| c != h1.0 && c != h2.0).collect();
    let base: VertexSet = comps[h1.0].vertices.union(&comps[h2.0].vertices).copied().collect();
    for mask in 0u64..(1u64 << others.len()) {
        let mut x = base.clone();
        for (bit, &c) in others.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                x.extend(comps[c].vertices.iter().copied());
            }
        }
        let sub = g.induced_unchecked(&x);
        if !sub.is_connected() {
            continue;
        }
        let contracted = sub.contract(&comps[h1.0].vertices)?;
        if is_factor_critical(&contracted) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Classes of `∼` inside one component, ordered by least vertex.
pub fn kl_partition(g: &Graph, component: &FactorComponent) -> Result<Vec<VertexSet>> {
    let mut oracle = PairOracle::new(g);
    kl_classes(&mut oracle, component)
}

fn kl_classes(oracle: &mut PairOracle, component: &FactorComponent) -> Result<Vec<VertexSet>> {
    let mut classes: Vec<VertexSet> = Vec::new();
    for &v in &component.vertices {
        let home = classes
            .iter()
            .position(|c| !oracle.factorizable_without(*c.first().expect("non-empty"), v));
        match home {
            Some(i) => {
                classes[i].insert(v);
            }
            None => classes.push(VertexSet::from([v])),
        }
    }
    // transitivity: related inside a class, unrelated across classes
    for (i, c) in classes.iter().enumerate() {
        for &a in c {
            for (j, d) in classes.iter().enumerate() {
                for &b in d {
                    if a == b {
                        continue;
                    }
                    let related = !oracle.factorizable_without(a, b);
                    if related != (i == j) {
                        return Err(Error::internal(format!(
                            "∼ is not an equivalence relation on {}: pair ({a}, {b})",
                            component.id
                        )));
                    }
                }
            }
        }
    }
    Ok(classes)
}

#[derive(Clone, Debug)]
pub struct CanonicalDecomposition {
    graph: Graph,
    allowed: BTreeSet<EdgeId>,
    components: Vec<FactorComponent>,
    /// `order[i][j]` iff `Hi ⪯ Hj`.
    order: Vec<Vec<bool>>,
    classes: Vec<Vec<VertexSet>>,
    tags: Vec<Vec<UpperTag>>,
    component_of: BTreeMap<VertexId, ComponentId>,
}

impl CanonicalDecomposition {
    pub fn new(g: &Graph) -> Result<Self> {
        let allowed = allowed_edges(g)?;
        let components = components_from_allowed(g, &allowed);
        let k = components.len();
        let mut order = vec![vec![false; k]; k];
        for i in 0..k {
            for j in 0..k {
                order[i][j] = leq_by_definition(g, &components, ComponentId(i), ComponentId(j))?;
            }
        }
        check_partial_order(&order)?;
        let mut oracle = PairOracle::new(g);
        let classes = components
            .iter()
            .map(|c| kl_classes(&mut oracle, c))
            .collect::<Result<Vec<_>>>()?;
        let component_of = components
            .iter()
            .flat_map(|c| c.vertices.iter().map(move |&v| (v, c.id)))
            .collect();
        let mut d = CanonicalDecomposition {
            graph: g.clone(),
            allowed,
            components,
            order,
            classes,
            tags: Vec::new(),
            component_of,
        };
        d.tags = (0..k)
            .map(|i| d.compute_tags(ComponentId(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(d)
    }

    fn compute_tags(&self, h: ComponentId) -> Result<Vec<UpperTag>> {
        let up = self.vup(h)?;
        let region = self.graph.induced_unchecked(&up);
        let hv = &self.components[h.0].vertices;
        region
            .connected_components()
            .into_iter()
            .map(|piece| {
                let attach: VertexSet = self.graph.neighborhood(&piece).intersection(hv).copied().collect();
                let holders: Vec<usize> = self.classes[h.0]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| attach.is_subset(c))
                    .map(|(i, _)| i)
                    .collect();
                match holders.as_slice() {
                    [class] if !attach.is_empty() => Ok(UpperTag { vertices: piece, class: *class }),
                    _ => Err(Error::internal(format!(
                        "upper piece {piece:?} over {h} attaches to {attach:?}, not to a single class"
                    ))),
                }
            })
            .collect()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn allowed_edges(&self) -> &BTreeSet<EdgeId> {
        &self.allowed
    }

    pub fn components(&self) -> &[FactorComponent] {
        &self.components
    }

    pub fn component_ids(&self) -> impl Iterator<Item = ComponentId> + '_ {
        (0..self.components.len()).map(ComponentId)
    }

    pub fn component(&self, h: ComponentId) -> Result<&FactorComponent> {
        self.components.get(h.0).ok_or(Error::InvalidComponent(h.0))
    }

    pub fn vertices_of(&self, h: ComponentId) -> Result<&VertexSet> {
        self.component(h).map(|c| &c.vertices)
    }

    pub fn component_of(&self, v: VertexId) -> Option<ComponentId> {
        self.component_of.get(&v).copied()
    }

    /// The component whose vertex set is exactly `x`, if any.
    pub fn component_with_vertices(&self, x: &VertexSet) -> Option<ComponentId> {
        self.components.iter().find(|c| &c.vertices == x).map(|c| c.id)
    }

    pub fn leq(&self, h1: ComponentId, h2: ComponentId) -> Result<bool> {
        self.component(h1)?;
        self.component(h2)?;
        Ok(self.order[h1.0][h2.0])
    }

    /// Strict pairs `(a, b)` with `a ≺ b`.
    pub fn order_pairs(&self) -> Vec<(ComponentId, ComponentId)> {
        let k = self.components.len();
        (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && self.order[i][j])
            .map(|(i, j)| (ComponentId(i), ComponentId(j)))
            .collect()
    }

    pub fn comparable(&self, a: ComponentId, b: ComponentId) -> bool {
        self.order[a.0][b.0] || self.order[b.0][a.0]
    }

    /// Components with no strict lower bound, in id order.
    pub fn minimal(&self) -> Vec<ComponentId> {
        self.component_ids()
            .filter(|&h| self.component_ids().all(|i| i == h || !self.order[i.0][h.0]))
            .collect()
    }

    pub fn is_minimal(&self, h: ComponentId) -> bool {
        self.component_ids().all(|i| i == h || !self.order[i.0][h.0])
    }

    /// Components `I ≺ h` with nothing strictly between.
    pub fn immediate_lower_bounds(&self, h: ComponentId) -> Vec<ComponentId> {
        let below: Vec<ComponentId> = self
            .component_ids()
            .filter(|&i| i != h && self.order[i.0][h.0])
            .collect();
        below
            .iter()
            .copied()
            .filter(|&i| !below.iter().any(|&j| j != i && self.order[i.0][j.0]))
            .collect()
    }

    pub fn upper_bounds(&self, h: ComponentId) -> Vec<ComponentId> {
        self.component_ids().filter(|&i| self.order[h.0][i.0]).collect()
    }

    /// Vertex set of the tower over `h`: all upper bounds, `h` included.
    pub fn vupstar(&self, h: ComponentId) -> Result<VertexSet> {
        self.component(h)?;
        Ok(self
            .upper_bounds(h)
            .into_iter()
            .flat_map(|i| self.components[i.0].vertices.iter().copied())
            .collect())
    }

    pub fn vup(&self, h: ComponentId) -> Result<VertexSet> {
        let own = self.vertices_of(h)?;
        Ok(self.vupstar(h)?.difference(own).copied().collect())
    }

    pub fn classes(&self, h: ComponentId) -> Result<&[VertexSet]> {
        self.component(h)?;
        Ok(&self.classes[h.0])
    }

    pub fn class(&self, s: ClassRef) -> Result<&VertexSet> {
        self.classes(s.component)?
            .get(s.index)
            .ok_or(Error::InvalidClass { component: s.component.0, class: s.index })
    }

    /// The class containing `v`.
    pub fn class_of(&self, v: VertexId) -> Option<ClassRef> {
        let h = self.component_of(v)?;
        let index = self.classes[h.0].iter().position(|c| c.contains(&v))?;
        Some(ClassRef { component: h, index })
    }

    /// Tags of the upper pieces over `h`.
    pub fn tags(&self, h: ComponentId) -> Result<&[UpperTag]> {
        self.component(h)?;
        Ok(&self.tags[h.0])
    }

    pub fn up_sets(&self, s: ClassRef) -> Result<UpSets> {
        let class = self.class(s)?;
        let mut vupstar = class.clone();
        for tag in self.tags[s.component.0].iter().filter(|t| t.class == s.index) {
            vupstar.extend(tag.vertices.iter().copied());
        }
        let vup = vupstar.difference(class).copied().collect();
        let vcoup = self.vupstar(s.component)?.difference(&vupstar).copied().collect();
        Ok(UpSets { vupstar, vup, vcoup })
    }

    /// For `v` in the tower over `h`, the class `S` of `h` with
    /// `v ∈ vupstar(S)`.
    pub fn tower_class_of(&self, h: ComponentId, v: VertexId) -> Result<Option<ClassRef>> {
        let comp = self.component(h)?;
        if comp.vertices.contains(&v) {
            return Ok(self.class_of(v));
        }
        Ok(self.tags[h.0]
            .iter()
            .find(|t| t.vertices.contains(&v))
            .map(|t| ClassRef { component: h, index: t.class }))
    }

    /// Whether `x` is a union of factor-component vertex sets.
    pub fn is_separating(&self, x: &VertexSet) -> bool {
        x.iter().all(|v| {
            self.component_of(*v)
                .is_some_and(|h| self.components[h.0].vertices.is_subset(x))
        })
    }

    /// The constructive paths inside the tower over `h`.
    ///
    /// `m` must be a perfect matching of the decomposed graph. Failure to
    /// construct a path whose preconditions hold is an internal error.
    pub fn tpath(&self, m: &Matching, h: ComponentId, variant: TpathVariant) -> Result<AltPath> {
        let g = &self.graph;
        m.check_perfect(g)?;
        let hv = self.vertices_of(h)?;
        let tower = self.vupstar(h)?;
        let class_in_tower = |v: VertexId| -> Result<ClassRef> {
            self.tower_class_of(h, v)?
                .ok_or_else(|| Error::precondition(format!("{v} is not in the tower over {h}")))
        };
        let base_class = |v: VertexId| -> Result<ClassRef> {
            if !hv.contains(&v) {
                return Err(Error::precondition(format!("{v} is not a vertex of {h}")));
            }
            Ok(self.class_of(v).expect("vertex of a component"))
        };
        match variant {
            TpathVariant::UpToBase { x } => {
                let s = class_in_tower(x)?;
                let class = self.class(s)?;
                if class.contains(&x) {
                    return Ok(AltPath::trivial(x));
                }
                let vup = self.up_sets(s)?.vup;
                for &y in class {
                    let mut confined = vup.clone();
                    confined.insert(y);
                    if let Some(p) = balanced_path(g, m, x, y, &confined)? {
                        return Ok(p);
                    }
                }
                Err(Error::internal(format!("no balanced path from {x} into its base class")))
            }
            TpathVariant::BaseToBase { x, y } => {
                let (s, t) = (base_class(x)?, base_class(y)?);
                if s == t {
                    return Err(Error::precondition("ends lie in the same class"));
                }
                let mut w = tower.clone();
                for r in [s, t] {
                    for v in self.up_sets(r)?.vup {
                        w.remove(&v);
                    }
                }
                self.saturated_within(m, &w, x, y)
            }
            TpathVariant::BaseToCoup { x, y } => {
                let s = base_class(x)?;
                let sets = self.up_sets(s)?;
                if !sets.vcoup.contains(&y) {
                    return Err(Error::precondition(format!("{y} is not in vcoup of the class of {x}")));
                }
                let w: VertexSet = tower.difference(&sets.vup).copied().collect();
                self.saturated_within(m, &w, x, y)
            }
            TpathVariant::UpToUp { x, y } => {
                let (s, t) = (class_in_tower(x)?, class_in_tower(y)?);
                if s == t {
                    return Err(Error::precondition("ends hang off the same class"));
                }
                self.saturated_within(m, &tower, x, y)
            }
        }
    }

    fn saturated_within(&self, m: &Matching, w: &VertexSet, x: VertexId, y: VertexId) -> Result<AltPath> {
        let sub = self.graph.induced_unchecked(w);
        let sm = m.restrict(&sub);
        let found = saturated_path(&sub, &sm, x, y).map_err(|e| match e {
            Error::ImperfectMatching(_) => Error::internal("confinement set is not separating"),
            other => other,
        })?;
        let p = found.ok_or_else(|| Error::internal(format!("no saturated path between {x} and {y}")))?;
        let p = AltPath::new(&self.graph, m, p.vertices().to_vec(), p.edges().to_vec())?;
        debug_assert_eq!(p.kind(), PathKind::Saturated);
        Ok(p)
    }
}

fn check_partial_order(order: &[Vec<bool>]) -> Result<()> {
    let k = order.len();
    for i in 0..k {
        if !order[i][i] {
            return Err(Error::internal(format!("⪯ is not reflexive at H{i}")));
        }
        for j in 0..k {
            if i != j && order[i][j] && order[j][i] {
                return Err(Error::internal(format!("⪯ is not antisymmetric on H{i}, H{j}")));
            }
            for l in 0..k {
                if order[i][j] && order[j][l] && !order[i][l] {
                    return Err(Error::internal(format!("⪯ is not transitive on H{i}, H{j}, H{l}")));
                }
            }
        }
    }
    Ok(())
}
