//! Fat perfect matchings across non-trivial cuts of a brick.
//!
//! Given a brick `Ĝ` and a shore `Ŝ` with `1 < |Ŝ| < |V(Ĝ)| - 1`,
//! [`fat_witness`] returns a perfect matching with at least two edges in
//! `δ(Ŝ)`. Starting from a matching `M̂` that crosses the cut once, through
//! `uv`, it studies `G = Ĝ - u - v` with `M = M̂ - uv` and the shore
//! `S = Ŝ - u`, and builds an `M̂`-alternating circuit of `Ĝ` with two
//! unmatched edges in the cut. Which construction fired is recorded in the
//! witness trace:
//!
//! - `fat-input`: the given matching already crosses twice.
//! - `reseed`: the given matching missed the cut; a matching through a cut
//!   edge was used instead.
//! - `not-separating`: `S` is not a union of factor-components of `G`.
//! - `swap`: no border of `G` lay inside `S`, so the sides were exchanged.
//! - `mixed/halfopen`, `mixed/surrounded`: some minimal component of `G`
//!   lies outside `S`; a spanning arc is closed through `u` and `v`.
//! - `contained/cut-vertex`, `contained/proper-ear`, `contained/multiNei`,
//!   `contained/multi2ear`: every minimal component lies inside `S`; an ear
//!   relative to the largest lower ideal inside `S` is closed into a
//!   circuit.
//!
//! Every claim the constructions rely on is checked as it is used. A failed
//! check is an [`Error::Internal`].

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::altpath::{ear_split, find_ear_through, saturated_path, switch_circuit, AltPath, Arc, Circuit, Ear, PathKind};
use crate::canon::{CanonicalDecomposition, ComponentId, TpathVariant};
use crate::error::{certify, Error, Result};
use crate::graph::{EdgeId, Graph, VertexId, VertexSet};
use crate::matching::{brick_violation, find_perfect_matching, perfect_matching_containing, Matching};
use crate::towers::{
    arc_from_adjacency, arc_from_sequence, borders, join, parts, spanning_arc_through, spanning_sequence_across,
    t_adjacency,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutWitness {
    pub shore: VertexSet,
    pub input_matching: Matching,
    /// The matching the circuit is switched against; differs from the input
    /// only after a reseed.
    pub base_matching: Matching,
    pub circuit: Option<Circuit>,
    pub output_matching: Matching,
    pub trace: Vec<&'static str>,
}

impl CutWitness {
    /// Output edges in `δ(shore)`.
    pub fn crossing(&self, g: &Graph) -> usize {
        self.output_matching.crossing_count(g, &self.shore)
    }
}

/// A perfect matching of the brick `ghat` with two or more edges across
/// `shore`, starting from `mhat` (or a matching of our choosing).
pub fn fat_witness(ghat: &Graph, shore: &VertexSet, mhat: Option<&Matching>) -> Result<CutWitness> {
    if let Some(pair) = brick_violation(ghat) {
        return Err(Error::NotABrick { pair });
    }
    ghat.check_subset(shore)?;
    let order = ghat.vertex_count();
    if shore.len() < 2 || shore.len() + 1 >= order {
        return Err(Error::ShoreSize { size: shore.len(), order });
    }
    let input = match mhat {
        Some(m) => {
            m.check_perfect(ghat)?;
            m.clone()
        }
        None => find_perfect_matching(ghat).ok_or(Error::NotFactorizable)?,
    };
    let mut trace = Vec::new();
    let done = |base: Matching, trace: Vec<&'static str>| CutWitness {
        shore: shore.clone(),
        input_matching: input.clone(),
        output_matching: base.clone(),
        base_matching: base,
        circuit: None,
        trace,
    };
    if input.crossing_count(ghat, shore) >= 2 {
        trace.push("fat-input");
        return Ok(done(input.clone(), trace));
    }
    let mut base = input.clone();
    if base.crossing_count(ghat, shore) == 0 {
        trace.push("reseed");
        let e = ghat
            .cut(shore)
            .into_iter()
            .min()
            .ok_or_else(|| Error::internal("a brick has an empty cut"))?;
        base = perfect_matching_containing(ghat, e)?
            .ok_or_else(|| Error::internal(format!("brick edge {e} is not allowed")))?;
        if base.crossing_count(ghat, shore) >= 2 {
            return Ok(done(base, trace));
        }
    }
    let uv = base
        .edges()
        .find(|e| {
            let edge = ghat.edge(*e).expect("matching of ghat");
            shore.contains(&edge.u) != shore.contains(&edge.v)
        })
        .ok_or_else(|| Error::internal("no crossing edge after reseeding"))?;
    let edge = *ghat.edge(uv).expect("matching of ghat");
    let (u, v) = if shore.contains(&edge.u) { (edge.u, edge.v) } else { (edge.v, edge.u) };
    let circuit = one_crossing(ghat, shore, &base, u, v, uv, &mut trace)?;
    if !circuit.is_alternating(&base) {
        return Err(Error::internal("circuit does not alternate"));
    }
    let crossing_free = circuit
        .edges()
        .iter()
        .filter(|e| !base.contains(**e))
        .filter(|e| {
            let ed = ghat.edge(**e).expect("circuit of ghat");
            shore.contains(&ed.u) != shore.contains(&ed.v)
        })
        .count();
    if crossing_free < 2 {
        return Err(Error::internal(format!(
            "circuit {:?} has {crossing_free} unmatched cut edges",
            circuit.vertices()
        )));
    }
    let output = certify(switch_circuit(ghat, &base, &circuit), "switching the circuit")?;
    if output.crossing_count(ghat, shore) < 2 {
        return Err(Error::internal("switched matching is not fat"));
    }
    Ok(CutWitness {
        shore: shore.clone(),
        input_matching: input,
        base_matching: base,
        circuit: Some(circuit),
        output_matching: output,
        trace,
    })
}

/// Everything fixed once the single crossing edge `uv` is known.
struct Setup<'a> {
    ghat: &'a Graph,
    mhat: &'a Matching,
    g: &'a Graph,
    m: &'a Matching,
    d: &'a CanonicalDecomposition,
    /// `S` after normalization, so that a border of `G` lies inside it.
    s: VertexSet,
    sbar: VertexSet,
    /// `u` lies on the `S` side, `v` on the other.
    u: VertexId,
    v: VertexId,
    uv: EdgeId,
}

fn one_crossing(
    ghat: &Graph,
    shore: &VertexSet,
    base: &Matching,
    u: VertexId,
    v: VertexId,
    uv: EdgeId,
    trace: &mut Vec<&'static str>,
) -> Result<Circuit> {
    let g = ghat.without(&[u, v]);
    let m = base.restrict(&g);
    let s: VertexSet = shore.iter().copied().filter(|x| *x != u).collect();
    let sbar: VertexSet = g.vertices().filter(|x| !s.contains(x)).collect();
    let d = certify(CanonicalDecomposition::new(&g), "decomposing G")?;
    if !d.is_separating(&s) {
        trace.push("not-separating");
        return not_separating(ghat, &g, &m, &d, &s);
    }
    let brd = borders(&d)?;
    let holds_border = |side: &VertexSet| -> Result<bool> {
        for (h, _) in &brd {
            if d.vertices_of(*h)?.is_subset(side) {
                return Ok(true);
            }
        }
        Ok(false)
    };
    let (s, sbar, u, v) = if holds_border(&s)? {
        (s, sbar, u, v)
    } else {
        trace.push("swap");
        (sbar, s, v, u)
    };
    if !holds_border(&s)? {
        return Err(Error::internal("G has no border on either side"));
    }
    let cx = Setup { ghat, mhat: base, g: &g, m: &m, d: &d, s, sbar, u, v, uv };
    let mut mixed = false;
    for h in d.minimal() {
        mixed |= d.vertices_of(h)?.is_subset(&cx.sbar);
    }
    let circuit = if mixed { case_mixed(&cx, trace)? } else { case_contained(&cx, trace)? };
    if !circuit.contains_edge(uv) {
        return Err(Error::internal("circuit avoids uv"));
    }
    Ok(circuit)
}

/// `S` is not separating: an allowed edge of `G` crosses it, and the
/// alternating circuit through that edge in `M △ M'` is switched.
fn not_separating(ghat: &Graph, g: &Graph, m: &Matching, d: &CanonicalDecomposition, s: &VertexSet) -> Result<Circuit> {
    let e = g
        .cut(s)
        .into_iter()
        .filter(|e| d.allowed_edges().contains(e))
        .min()
        .ok_or_else(|| Error::internal("non-separating shore without an allowed cut edge"))?;
    let other = perfect_matching_containing(g, e)?.ok_or_else(|| Error::internal("allowed edge in no matching"))?;
    let start = g.edge(e).expect("edge of g").u;
    let mut vertices = vec![start];
    let mut edges = Vec::new();
    let mut cur = start;
    let mut use_other = true;
    loop {
        let side = if use_other { &other } else { m };
        let (next, via) = (side.mate(cur), side.mate_edge(cur));
        let (Some(next), Some(via)) = (next, via) else {
            return Err(Error::internal("symmetric difference walk broke off"));
        };
        edges.push(via);
        if next == start {
            break;
        }
        vertices.push(next);
        cur = next;
        use_other = !use_other;
    }
    certify(Circuit::new(ghat, vertices, edges), "circuit through an allowed cut edge")
}

fn least_edge(g: &Graph, a: VertexId, b: VertexId) -> Result<EdgeId> {
    g.edges_between(a, b)
        .min()
        .ok_or_else(|| Error::internal(format!("{a} and {b} are not adjacent")))
}

fn in_set(d: &CanonicalDecomposition, h: ComponentId, side: &VertexSet) -> Result<bool> {
    Ok(d.vertices_of(h)?.is_subset(side))
}

/// Some minimal component of `G` lies outside `S`.
fn case_mixed(cx: &Setup, trace: &mut Vec<&'static str>) -> Result<Circuit> {
    let d = cx.d;
    let brd = borders(d)?;
    let mut border_outside = false;
    for (h, _) in &brd {
        border_outside |= in_set(d, *h, &cx.sbar)?;
    }
    let arc = if border_outside {
        trace.push("mixed/halfopen");
        let seq = spanning_sequence_across(d, &cx.s, &cx.sbar)?
            .ok_or_else(|| Error::internal("no spanning tower-sequence across the cut"))?;
        arc_from_sequence(d, cx.m, &seq)?
    } else {
        trace.push("mixed/surrounded");
        let mut stranded = None;
        for h in d.minimal() {
            if in_set(d, h, &cx.sbar)? {
                stranded = Some(h);
                break;
            }
        }
        let h = stranded.ok_or_else(|| Error::internal("no minimal component outside S"))?;
        if brd.iter().any(|(b, _)| *b == h) {
            return Err(Error::internal(format!("{h} is a border outside S")));
        }
        certify(spanning_arc_through(d, cx.m, h), "spanning arc through a stranded component")?
    };
    let across = arc
        .path
        .edges()
        .iter()
        .filter(|e| {
            let ed = cx.g.edge(**e).expect("arc of G");
            cx.s.contains(&ed.u) != cx.s.contains(&ed.v)
        })
        .count();
    if across == 0 {
        return Err(Error::internal("spanning arc stays on one side"));
    }
    arc_to_circuit(cx, arc)
}

/// Closes a spanning arc through `u` and `v` with saturated tails inside
/// the towers over its ends.
fn arc_to_circuit(cx: &Setup, arc: Arc) -> Result<Circuit> {
    let d = cx.d;
    let arc = if in_set(d, arc.ends.0, &cx.s)? { arc } else { arc.reversed() };
    if !in_set(d, arc.ends.0, &cx.s)? {
        return Err(Error::internal("neither end of the spanning arc lies in S"));
    }
    let brd = borders(d)?;
    let (s1, s2) = (arc.path.first(), arc.path.last());
    let (c1, c2) = (class_of(d, s1)?, class_of(d, s2)?);
    for (h, c) in [(arc.ends.0, c1), (arc.ends.1, c2)] {
        match brd.iter().find(|(b, _)| *b == h) {
            Some((_, Some(port))) if *port == c => {}
            _ => return Err(Error::internal(format!("arc end in {h} is not at a border port"))),
        }
    }
    let coup1 = d.up_sets(c1)?.vcoup;
    let coup2 = d.up_sets(c2)?.vcoup;
    let near = |w: VertexId, coup: &VertexSet| -> Vec<VertexId> {
        cx.ghat.neighbors(w).into_iter().filter(|t| coup.contains(t)).collect()
    };
    let (t1s, t2s) = (near(cx.v, &coup1), near(cx.u, &coup2));
    if t1s.is_empty() || t2s.is_empty() {
        return Err(Error::internal("a border port has no vcoup neighbour of u or v"));
    }
    let on_arc = arc.path.vertex_set();
    for &t1 in &t1s {
        let q1 = certify(d.tpath(cx.m, arc.ends.0, TpathVariant::BaseToCoup { x: s1, y: t1 }), "first tail")?;
        check_tail(&q1, d.class(c1)?, &coup1, &on_arc)?;
        for &t2 in &t2s {
            let q2 = certify(d.tpath(cx.m, arc.ends.1, TpathVariant::BaseToCoup { x: s2, y: t2 }), "second tail")?;
            check_tail(&q2, d.class(c2)?, &coup2, &on_arc)?;
            let walk = join(parts(&q1.reversed()), (arc.path.vertices(), arc.path.edges()));
            let (mut vs, mut es) = join(walk, (q2.vertices(), q2.edges()));
            es.push(least_edge(cx.ghat, t2, cx.u)?);
            vs.push(cx.u);
            es.push(cx.uv);
            vs.push(cx.v);
            es.push(least_edge(cx.ghat, cx.v, t1)?);
            if let Ok(c) = Circuit::new(cx.ghat, vs, es) {
                return Ok(c);
            }
        }
    }
    Err(Error::internal("tails of the spanning arc always collide"))
}

/// A tail from the arc end stays in its class and `vcoup` of it, and meets
/// the arc only at that end.
fn check_tail(q: &AltPath, class: &VertexSet, coup: &VertexSet, on_arc: &VertexSet) -> Result<()> {
    let rest = &q.vertices()[1..];
    if rest.iter().any(|v| !coup.contains(v) && !class.contains(v)) {
        return Err(Error::internal(format!("tail {:?} leaves its tower", q.vertices())));
    }
    if rest.iter().any(|v| on_arc.contains(v)) {
        return Err(Error::internal(format!("tail {:?} meets the arc", q.vertices())));
    }
    Ok(())
}

fn class_of(d: &CanonicalDecomposition, v: VertexId) -> Result<crate::canon::ClassRef> {
    d.class_of(v)
        .ok_or_else(|| Error::internal(format!("{v} lies in no component")))
}

/// The union of the largest lower ideal of `G`'s poset whose members all
/// lie inside `s`.
pub fn compute_s0(d: &CanonicalDecomposition, s: &VertexSet) -> Result<VertexSet> {
    for h in d.minimal() {
        if !d.vertices_of(h)?.is_subset(s) {
            return Err(Error::precondition(format!("minimal component {h} is not inside the set")));
        }
    }
    let mut out = VertexSet::new();
    for h in d.component_ids() {
        let mut ok = true;
        for i in d.component_ids() {
            if d.leq(i, h)? && !d.vertices_of(i)?.is_subset(s) {
                ok = false;
                break;
            }
        }
        if ok {
            out.extend(d.vertices_of(h)?.iter().copied());
        }
    }
    Ok(out)
}

/// One component `C` of `G - S0`, with its own decomposition.
struct Piece {
    vertices: VertexSet,
    dc: CanonicalDecomposition,
    mc: Matching,
}

/// An ear relative to `s0` traversing the minimal component `h` of `C`,
/// obtained from an ear relative to an immediate lower bound of `h` in `G`
/// split at the edges inside `s0`.
pub fn ear_for_min_component(
    g: &Graph,
    m: &Matching,
    d: &CanonicalDecomposition,
    s0: &VertexSet,
    h_vertices: &VertexSet,
) -> Result<Ear> {
    let h = d
        .component_with_vertices(h_vertices)
        .ok_or_else(|| Error::internal(format!("{h_vertices:?} is not a factor-component of G")))?;
    let lower = d.immediate_lower_bounds(h);
    let Some(&i) = lower.first() else {
        return Err(Error::internal(format!("{h} has no lower bound in G")));
    };
    for &l in &lower {
        if !d.vertices_of(l)?.is_subset(s0) {
            return Err(Error::internal(format!("immediate lower bound {l} of {h} is not inside S0")));
        }
    }
    let ear = find_ear_through(g, m, d.vertices_of(i)?, h_vertices)?
        .ok_or_else(|| Error::internal(format!("no ear relative to {i} traverses {h}")))?;
    let pieces = certify(ear_split(g, m, ear.vertices(), ear.edges(), s0), "splitting an ear at S0")?;
    pieces
        .into_iter()
        .find(|p| p.traverses(h_vertices))
        .ok_or_else(|| Error::internal(format!("no piece of the split ear traverses {h}")))
}

/// A balanced path from `y`, in the tower over `h` within `C`, to an end
/// of the ear `p_h`; all of it except that end lies in `C`.
pub fn balanced_to_ear_end(
    g: &Graph,
    m: &Matching,
    dc: &CanonicalDecomposition,
    mc: &Matching,
    h: ComponentId,
    y: VertexId,
    p_h: &Ear,
) -> Result<AltPath> {
    let w = dc.vupstar(h)?;
    if !w.contains(&y) {
        return Err(Error::precondition(format!("{y} is not in the tower over {h}")));
    }
    let vs = p_h.vertices();
    let es = p_h.edges();
    let (Some(a), Some(b)) = (vs.iter().position(|v| w.contains(v)), vs.iter().rposition(|v| w.contains(v))) else {
        return Err(Error::internal("ear does not reach the tower"));
    };
    if a >= b || vs[a..=b].iter().any(|v| !w.contains(v)) {
        return Err(Error::internal(format!("ear {vs:?} leaves the tower over {h} in its middle")));
    }
    let tower_class = |v: VertexId| -> Result<crate::canon::ClassRef> {
        dc.tower_class_of(h, v)?
            .ok_or_else(|| Error::internal(format!("{v} has no class in the tower over {h}")))
    };
    let (t1, t2, t3) = (tower_class(vs[a])?, tower_class(vs[b])?, tower_class(y)?);
    if t1 == t2 {
        return Err(Error::internal("ear enters and leaves the tower through one class"));
    }
    let (z, tail_v, tail_e): (VertexId, Vec<VertexId>, Vec<EdgeId>) = if t1 != t3 {
        (vs[a], vs[..=a].iter().rev().copied().collect(), es[..a].iter().rev().copied().collect())
    } else {
        (vs[b], vs[b..].to_vec(), es[b..].to_vec())
    };
    let link = certify(dc.tpath(mc, h, TpathVariant::UpToUp { x: y, y: z }), "path across the tower")?;
    let (pv, pe) = join(parts(&link), (&tail_v, &tail_e));
    let q = certify(AltPath::new(g, m, pv, pe), "path to the ear end")?;
    let end = q.last();
    if !q.is_balanced(y, end) || (end != vs[0] && end != vs[vs.len() - 1]) {
        return Err(Error::internal("path to the ear end is not balanced"));
    }
    let inside = dc.graph().vertex_set();
    if q.vertices()[..q.vertices().len() - 1].iter().any(|v| !inside.contains(v)) {
        return Err(Error::internal("path to the ear end leaves C"));
    }
    Ok(q)
}

/// Every minimal component of `G` lies inside `S`.
fn case_contained(cx: &Setup, trace: &mut Vec<&'static str>) -> Result<Circuit> {
    let (g, m, d) = (cx.g, cx.m, cx.d);
    let s0 = certify(compute_s0(d, &cx.s), "S0")?;
    let rest: VertexSet = g.vertices().filter(|v| !s0.contains(v)).collect();
    let vertices = g
        .induced_subgraph(&rest)?
        .connected_components()
        .into_iter()
        .next()
        .ok_or_else(|| Error::internal("S0 covers G"))?;
    let cg = g.induced_subgraph(&vertices)?;
    let mc = m.restrict(&cg);
    certify(mc.check_perfect(&cg), "matching restricted to C")?;
    let dc = certify(CanonicalDecomposition::new(&cg), "decomposing C")?;
    let piece = Piece { vertices, dc, mc };
    let pmin = piece.dc.minimal();
    let mut ears: Vec<(ComponentId, Ear)> = Vec::new();
    for &h in &pmin {
        let hv = piece.dc.vertices_of(h)?;
        if !hv.is_subset(&cx.sbar) {
            return Err(Error::internal(format!("minimal component {h} of C meets S")));
        }
        ears.push((h, ear_for_min_component(g, m, d, &s0, hv)?));
    }
    let attach: VertexSet = g.neighborhood(&piece.vertices).intersection(&s0).copied().collect();
    if attach.len() == 1 {
        trace.push("contained/cut-vertex");
        let x0 = *attach.first().expect("one vertex");
        return cut_vertex(cx, &piece, &ears, x0);
    }
    if let Some((_, ear)) = ears.iter().find(|(_, e)| e.is_proper()) {
        trace.push("contained/proper-ear");
        return proper_to_circuit(cx, ear);
    }
    for (h, ear) in &ears {
        let x_h = ear.ends().0;
        let tower = piece.dc.vupstar(*h)?;
        let mut other = None;
        for &y in &tower {
            for &(z, e) in g.incident(y) {
                if s0.contains(&z) && z != x_h && other.is_none_or(|(_, _, f)| e < f) {
                    other = Some((y, z, e));
                }
            }
        }
        if let Some((y, z, e)) = other {
            trace.push("contained/multiNei");
            let q = balanced_to_ear_end(g, m, &piece.dc, &piece.mc, *h, y, ear)?;
            let (vs, es) = join((vec![z, y], vec![e]), (q.vertices(), q.edges()));
            let proper = certify(Ear::new(g, m, vs, es, &s0), "ear through a second attachment")?;
            return proper_to_circuit(cx, &proper);
        }
    }
    trace.push("contained/multi2ear");
    multi2ear(cx, &piece, &ears, &s0)
}

fn cut_vertex(cx: &Setup, piece: &Piece, ears: &[(ComponentId, Ear)], x0: VertexId) -> Result<Circuit> {
    let p = saturated_path(cx.ghat, cx.mhat, x0, cx.u)?
        .ok_or_else(|| Error::internal(format!("brick has no saturated path between {x0} and {}", cx.u)))?;
    let (pv, pe) = (p.vertices(), p.edges());
    let k = pe.len();
    if k < 3 || pv[k - 1] != cx.v {
        return Err(Error::internal("saturated path to u does not arrive through v"));
    }
    let (rv, re) = (pv[..k - 1].to_vec(), pe[..k - 2].to_vec());
    let z = rv[rv.len() - 1];
    if rv.iter().any(|x| piece.vertices.contains(x)) {
        return Err(Error::internal("path from the cut vertex enters C"));
    }
    let r = certify(AltPath::new(cx.g, cx.m, rv, re), "path from the cut vertex")?;
    if r.kind() != PathKind::Saturated {
        return Err(Error::internal("path from the cut vertex is not saturated"));
    }
    let y = cx
        .ghat
        .neighbors(cx.u)
        .into_iter()
        .find(|y| piece.vertices.contains(y))
        .ok_or_else(|| Error::internal("u has no neighbour in C"))?;
    let mut chosen = None;
    for (h, ear) in ears {
        if piece.dc.vupstar(*h)?.contains(&y) {
            chosen = Some((*h, ear));
            break;
        }
    }
    let (h, ear) = chosen.ok_or_else(|| Error::internal(format!("{y} is in no tower over a minimal component of C")))?;
    let q = balanced_to_ear_end(cx.g, cx.m, &piece.dc, &piece.mc, h, y, ear)?;
    if q.last() != x0 {
        return Err(Error::internal("ear end is not the cut vertex"));
    }
    let mut vs = r.vertices().to_vec();
    let mut es = r.edges().to_vec();
    es.push(pe[k - 2]);
    vs.push(cx.v);
    es.push(cx.uv);
    vs.push(cx.u);
    es.push(least_edge(cx.ghat, cx.u, y)?);
    vs.extend_from_slice(&q.vertices()[..q.vertices().len() - 1]);
    es.extend_from_slice(q.edges());
    debug_assert_eq!(vs[0], x0);
    let _ = z;
    certify(Circuit::new(cx.ghat, vs, es), "circuit through the cut vertex")
}

/// Closes a proper ear relative to `S0` with a saturated path of the brick
/// between its ends, which must pass through `uv`.
fn proper_to_circuit(cx: &Setup, ear: &Ear) -> Result<Circuit> {
    if !ear.is_proper() {
        return Err(Error::internal("ear is not proper"));
    }
    if !ear.interior().iter().any(|v| cx.sbar.contains(v)) {
        return Err(Error::internal("ear does not traverse the far side"));
    }
    let (x, y) = ear.ends();
    let q = saturated_path(cx.ghat, cx.mhat, x, y)?
        .ok_or_else(|| Error::internal(format!("brick has no saturated path between {x} and {y}")))?;
    if !q.edges().contains(&cx.uv) {
        return Err(Error::internal("saturated path between the ear ends avoids uv"));
    }
    let on_ear: VertexSet = ear.vertices().iter().copied().collect();
    if q.vertices()[1..q.len()].iter().any(|v| on_ear.contains(v)) {
        return Err(Error::internal("saturated path meets the ear interior"));
    }
    let back = q.reversed();
    let mut vs = ear.vertices().to_vec();
    vs.extend_from_slice(&back.vertices()[1..back.vertices().len() - 1]);
    let mut es = ear.edges().to_vec();
    es.extend_from_slice(back.edges());
    certify(Circuit::new(cx.ghat, vs, es), "circuit from a proper ear")
}

fn multi2ear(cx: &Setup, piece: &Piece, ears: &[(ComponentId, Ear)], s0: &VertexSet) -> Result<Circuit> {
    let (g, m) = (cx.g, cx.m);
    let anchor = |h: ComponentId| ears.iter().find(|(k, _)| *k == h);
    for link in t_adjacency(&piece.dc)? {
        let (Some((h1, e1)), Some((h2, e2))) = (anchor(link.from.component), anchor(link.to.component)) else {
            continue;
        };
        if e1.ends().0 == e2.ends().0 {
            continue;
        }
        let r = arc_from_adjacency(&piece.dc, &piece.mc, link.from, link.to)?;
        let (s1, s2) = (r.path.first(), r.path.last());
        let q1 = balanced_to_ear_end(g, m, &piece.dc, &piece.mc, *h1, s1, e1)?;
        let q2 = balanced_to_ear_end(g, m, &piece.dc, &piece.mc, *h2, s2, e2)?;
        let on_r = r.path.vertex_set();
        for (q, s) in [(&q1, s1), (&q2, s2)] {
            if q.vertices().iter().any(|v| *v != s && on_r.contains(v)) {
                return Err(Error::internal("path to an ear end meets the arc"));
            }
        }
        let on_q1 = q1.vertex_set();
        if q2.vertices().iter().any(|v| on_q1.contains(v)) {
            return Err(Error::internal("paths to the two ear ends intersect"));
        }
        let walk = join(parts(&q1.reversed()), (r.path.vertices(), r.path.edges()));
        let (vs, es) = join(walk, (q2.vertices(), q2.edges()));
        let ear = certify(Ear::new(g, m, vs, es, s0), "ear through two adjacent towers")?;
        return proper_to_circuit(cx, &ear);
    }
    Err(Error::internal("no adjacent towers in C with distinct ear ends"))
}
