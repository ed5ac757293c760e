//! Serializable views of decompositions and witnesses, and DOT output.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use tightcut_core::towers::borders;
use tightcut_core::{CanonicalDecomposition, CutWitness, Graph, Matching, Result, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub id: usize,
    pub vertices: Vec<u32>,
    /// Kotzig-Lovász classes, each sorted.
    pub classes: Vec<Vec<u32>>,
    pub tags: Vec<TagReport>,
    /// Vertex set of the tower over this component.
    pub tower: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TagReport {
    pub vertices: Vec<u32>,
    pub class: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BorderReport {
    pub component: usize,
    /// Index of the port class, if the border has one.
    pub port: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub vertices: usize,
    pub edges: usize,
    pub components: Vec<ComponentReport>,
    /// Strict pairs `[a, b]` with component `a` below component `b`.
    pub order: Vec<[usize; 2]>,
    pub borders: Vec<BorderReport>,
}

fn ids(s: &VertexSet) -> Vec<u32> {
    s.iter().map(|v| v.0).collect()
}

impl DecompositionReport {
    pub fn new(d: &CanonicalDecomposition) -> Result<Self> {
        let mut components = Vec::new();
        for h in d.component_ids() {
            components.push(ComponentReport {
                id: h.0,
                vertices: ids(d.vertices_of(h)?),
                classes: d.classes(h)?.iter().map(ids).collect(),
                tags: d
                    .tags(h)?
                    .iter()
                    .map(|t| TagReport { vertices: ids(&t.vertices), class: t.class })
                    .collect(),
                tower: ids(&d.vupstar(h)?),
            });
        }
        let borders = borders(d)?
            .into_iter()
            .map(|(h, port)| BorderReport { component: h.0, port: port.map(|c| c.index) })
            .collect();
        Ok(DecompositionReport {
            vertices: d.graph().vertex_count(),
            edges: d.graph().edge_count(),
            components,
            order: d.order_pairs().into_iter().map(|(a, b)| [a.0, b.0]).collect(),
            borders,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Components become clusters; each strict order pair becomes an edge
/// between representative vertices of the two clusters. Allowed edges are
/// solid, the rest dashed.
pub fn to_dot(d: &CanonicalDecomposition) -> Result<String> {
    let g = d.graph();
    let mut out = String::from("graph decomposition {\n  compound=true;\n  node [shape=circle];\n");
    for h in d.component_ids() {
        let classes = d.classes(h)?;
        let _ = writeln!(out, "  subgraph cluster_{} {{\n    label=\"H{}\";", h.0, h.0);
        for v in d.vertices_of(h)? {
            let class = classes.iter().position(|c| c.contains(v)).unwrap_or(0);
            let _ = writeln!(out, "    {} [label=\"{}\", group=\"c{}\"];", v.0, v.0, class);
        }
        out.push_str("  }\n");
    }
    for e in g.edges() {
        let style = if d.allowed_edges().contains(&e.id) { "solid" } else { "dashed" };
        let _ = writeln!(out, "  {} -- {} [style={style}];", e.u.0, e.v.0);
    }
    for (a, b) in d.order_pairs() {
        let ra = d.vertices_of(a)?.first().map(|v| v.0);
        let rb = d.vertices_of(b)?.first().map(|v| v.0);
        if let (Some(ra), Some(rb)) = (ra, rb) {
            let _ = writeln!(
                out,
                "  {ra} -- {rb} [dir=forward, color=blue, constraint=false, ltail=cluster_{}, lhead=cluster_{}];",
                a.0, b.0
            );
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub shore: Vec<u32>,
    pub input_matching: Vec<[u32; 2]>,
    pub output_matching: Vec<[u32; 2]>,
    pub crossing: usize,
    pub circuit: Option<Vec<u32>>,
    pub trace: Vec<String>,
}

fn pairs(m: &Matching) -> Vec<[u32; 2]> {
    m.pairs().into_iter().map(|(a, b)| [a.0, b.0]).collect()
}

fn pair_text(p: &[[u32; 2]]) -> String {
    p.iter().map(|[a, b]| format!("{a}-{b}")).collect::<Vec<_>>().join(",")
}

impl WitnessReport {
    pub fn new(g: &Graph, w: &CutWitness) -> Self {
        WitnessReport {
            shore: ids(&w.shore),
            input_matching: pairs(&w.input_matching),
            output_matching: pairs(&w.output_matching),
            crossing: w.crossing(g),
            circuit: w.circuit.as_ref().map(|c| c.vertices().iter().map(|v| v.0).collect()),
            trace: w.trace.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let shore: Vec<String> = self.shore.iter().map(u32::to_string).collect();
        let mut out = String::new();
        let _ = writeln!(out, "shore: {}", shore.join(","));
        let _ = writeln!(out, "input matching: {}", pair_text(&self.input_matching));
        let _ = writeln!(out, "output matching: {}", pair_text(&self.output_matching));
        let _ = writeln!(out, "crossing edges: {}", self.crossing);
        if let Some(c) = &self.circuit {
            let c: Vec<String> = c.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "circuit: {}", c.join(" "));
        }
        let _ = writeln!(out, "trace: {}", self.trace.join(" > "));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tightcut_core::catalog;

    #[test]
    fn p4_report() {
        let d = CanonicalDecomposition::new(&catalog::p4()).unwrap();
        let r = DecompositionReport::new(&d).unwrap();
        assert_eq!(r.components.len(), 2);
        assert!(r.order.is_empty());
        let classes: Vec<_> = r.components.iter().map(|c| c.classes.clone()).collect();
        assert_eq!(classes, [vec![vec![1], vec![2]], vec![vec![3], vec![4]]]);
        assert_eq!(DecompositionReport::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn paw_report_and_dot() {
        let d = CanonicalDecomposition::new(&catalog::paw()).unwrap();
        let r = DecompositionReport::new(&d).unwrap();
        let c12 = r.components.iter().find(|c| c.vertices == [1, 2]).unwrap().id;
        let c34 = r.components.iter().find(|c| c.vertices == [3, 4]).unwrap().id;
        assert_eq!(r.order, [[c12, c34]]);
        let dot = to_dot(&d).unwrap();
        assert!(dot.starts_with("graph decomposition {"));
        assert_eq!(dot.matches("subgraph cluster_").count(), 2);
        assert_eq!(dot.matches("dir=forward").count(), 1);
    }
}
