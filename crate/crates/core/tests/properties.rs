use proptest::prelude::*;
use tightcut_core::altpath::{balanced_path, saturated_path};
use tightcut_core::matching::{find_perfect_matching, is_factorizable};
use tightcut_core::oracle::{
    check_decomposition, check_tower_relative, check_tpaths, enumerate_perfect_matchings, random_factorizable_graph,
};
use tightcut_core::towers::{borders, extend_to_spanning_sequence, t_adjacency, TowerSequence};
use tightcut_core::{CanonicalDecomposition, Graph, PathKind};

fn graph() -> impl Strategy<Value = Graph> {
    (1u32..6, 0.0f64..0.8, any::<u64>()).prop_map(|(h, p, seed)| random_factorizable_graph(2 * h, p, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generator_plants_a_matching(g in graph()) {
        prop_assert!(is_factorizable(&g));
        prop_assert!(!enumerate_perfect_matchings(&g, 16).unwrap().is_empty());
    }

    #[test]
    fn decomposition_agrees_with_oracles(g in graph()) {
        let t = check_decomposition(&g, 16).unwrap();
        prop_assert!(t.passed(), "{:?}", t.violations);
    }

    #[test]
    fn components_partition_vertices(g in graph()) {
        let d = CanonicalDecomposition::new(&g).unwrap();
        let mut seen = 0;
        for h in d.component_ids() {
            let vs = d.vertices_of(h).unwrap();
            seen += vs.len();
            let classes: usize = d.classes(h).unwrap().iter().map(|c| c.len()).sum();
            prop_assert_eq!(classes, vs.len());
        }
        prop_assert_eq!(seen, g.vertex_count());
        prop_assert!(!d.minimal().is_empty());
    }

    #[test]
    fn saturated_and_balanced_paths(g in graph()) {
        let m = find_perfect_matching(&g).unwrap();
        let all = g.vertex_set();
        for x in g.vertices() {
            for y in g.vertices().filter(|y| *y != x) {
                if let Some(p) = saturated_path(&g, &m, x, y).unwrap() {
                    prop_assert_eq!(p.kind(), PathKind::Saturated);
                    prop_assert_eq!((p.first(), p.last()), (x, y));
                }
                if let Some(p) = balanced_path(&g, &m, x, y, &all).unwrap() {
                    prop_assert!(p.is_balanced(x, y));
                }
            }
        }
    }

    #[test]
    fn tower_paths_and_ears(g in graph()) {
        let d = CanonicalDecomposition::new(&g).unwrap();
        let m = find_perfect_matching(&g).unwrap();
        let t = check_tpaths(&d, &m);
        prop_assert!(t.passed(), "{:?}", t.violations);
        let t = check_tower_relative(&d, &m);
        prop_assert!(t.passed(), "{:?}", t.violations);
    }

    #[test]
    fn adjacency_is_irreflexive_and_spans(g in graph()) {
        let d = CanonicalDecomposition::new(&g).unwrap();
        for link in t_adjacency(&d).unwrap() {
            prop_assert!(link.from.component != link.to.component);
            prop_assert!(!d.comparable(link.from.component, link.to.component));
        }
        let b = borders(&d).unwrap();
        prop_assert!(!b.is_empty());
        for h in d.minimal() {
            let seq = extend_to_spanning_sequence(&d, &TowerSequence::single(h)).unwrap();
            prop_assert!(seq.is_spanning(&d).unwrap());
        }
    }
}
