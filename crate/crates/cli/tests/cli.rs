use std::io::Write;
use std::process::{Command, Output};

use proptest::prelude::*;
use tempfile::NamedTempFile;
use tightcut_cli::input::parse_graph;
use tightcut_cli::report::DecompositionReport;
use tightcut_core::oracle::random_factorizable_graph;
use tightcut_core::CanonicalDecomposition;

const K4: &str = "4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
const K33: &str = "6 9\n1 4\n1 5\n1 6\n2 4\n2 5\n2 6\n3 4\n3 5\n3 6\n";
const PRISM: &str = "# triangles 123 and 456\n6 9\n1 2\n2 3\n1 3\n4 5\n5 6\n4 6\n1 4\n2 5\n3 6\n";
const P4: &str = "4 3\n1 2\n2 3\n3 4\n";
const PAW: &str = "# triangle 134, pendant 2\n4 4\n1 2\n1 3\n1 4\n3 4\n";

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn tightcut(args: &[&str], graph: &str) -> Output {
    tightcut_env(args, graph, None)
}

fn tightcut_env(args: &[&str], graph: &str, bound: Option<&str>) -> Output {
    let f = file(graph);
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tightcut"));
    let path = f.path().to_str().unwrap();
    let mut full: Vec<&str> = args.to_vec();
    let slot = full.iter().position(|a| *a == "FILE").unwrap();
    full[slot] = path;
    cmd.args(&full);
    cmd.env_remove("TIGHTCUT_ENUM_BOUND");
    if let Some(b) = bound {
        cmd.env("TIGHTCUT_ENUM_BOUND", b);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn decompose_json_p4() {
    let o = tightcut(&["decompose", "FILE", "--json"], P4);
    assert_eq!(o.status.code(), Some(0));
    let r = DecompositionReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.components.len(), 2);
    assert!(r.order.is_empty());
    assert_eq!(r.borders.len(), 2);
}

#[test]
fn decompose_dot_paw() {
    let o = tightcut(&["decompose", "FILE", "--dot"], PAW);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("subgraph cluster_0") && s.contains("dir=forward"));
}

#[test]
fn decompose_odd_graph() {
    let o = tightcut(&["decompose", "FILE"], "3 3\n1 2\n2 3\n1 3\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not factorizable"));
}

#[test]
fn parse_errors_exit_1_with_line() {
    let o = tightcut(&["decompose", "FILE"], "4 2\n1 2\n\n3 9\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
}

#[test]
fn witness_prism() {
    let o = tightcut(&["witness", "FILE", "--shore", "1,2,3", "--matching", "1-2,3-6,4-5", "--json"], PRISM);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["crossing"].as_u64().unwrap() >= 2);
    let across = [[1, 4], [2, 5], [3, 6]];
    let hits = v["output_matching"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| across.iter().any(|q| p[0] == q[0] && p[1] == q[1]))
        .count();
    assert!(hits >= 2);
}

#[test]
fn witness_k4_default_matching() {
    let o = tightcut(&["witness", "FILE", "--shore", "1,2"], K4);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("crossing edges: 2"));
}

#[test]
fn witness_rejections() {
    let o = tightcut(&["witness", "FILE", "--shore", "1,2,4"], K33);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a brick"));
    let o = tightcut(&["witness", "FILE", "--shore", "1"], K4);
    assert_eq!(o.status.code(), Some(2));
    let o = tightcut(&["witness", "FILE", "--shore", "1,x"], K4);
    assert_eq!(o.status.code(), Some(1));
    let o = tightcut(&["witness", "FILE", "--shore", "1,2", "--matching", "1-2"], K4);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn checks() {
    let o = tightcut(&["check", "brick", "FILE"], K4);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "true\n".to_string()));
    let o = tightcut(&["check", "tight-cuts", "FILE"], PRISM);
    assert!(stdout(&o).ends_with("6 tight cut(s)\n"));
    let o = tightcut(&["check", "verify-decomp", "FILE"], PAW);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("all invariants hold\n"));
}

#[test]
fn enum_bound_from_environment() {
    let o = tightcut_env(&["check", "tight-cuts", "FILE"], PRISM, Some("4"));
    assert_eq!(o.status.code(), Some(2));
    let o = tightcut_env(&["check", "tight-cuts", "FILE"], PRISM, Some("many"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_subcommand() {
    let o = tightcut(&["frobnicate", "FILE"], K4);
    assert_eq!(o.status.code(), Some(1));
}

fn emit(g: &tightcut_core::Graph) -> String {
    let mut s = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        s += &format!("{} {}\n", e.u.0, e.v.0);
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn report_round_trips(half in 1u32..6, p in 0.0f64..0.8, seed in any::<u64>()) {
        let g = random_factorizable_graph(2 * half, p, seed).unwrap();
        let reparsed = parse_graph(&emit(&g)).unwrap();
        prop_assert_eq!(&reparsed, &g);
        let r = DecompositionReport::new(&CanonicalDecomposition::new(&g).unwrap()).unwrap();
        prop_assert_eq!(DecompositionReport::from_json(&r.to_json()).unwrap(), r.clone());
        for c in &r.components {
            prop_assert!(c.vertices.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
