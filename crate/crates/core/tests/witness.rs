use std::collections::BTreeSet;

use tightcut_core::matching::is_brick;
use tightcut_core::oracle::{canonical_shores, enumerate_perfect_matchings, random_factorizable_graph};
use tightcut_core::{catalog, fat_witness, vset, Error, Graph, Matching};

fn random_bricks(seeds: std::ops::Range<u64>, orders: &[u32]) -> Vec<(u64, Graph)> {
    seeds
        .filter_map(|seed| {
            let n = orders[seed as usize % orders.len()];
            let p = [0.35, 0.5, 0.65][seed as usize % 3];
            let g = random_factorizable_graph(n, p, seed).unwrap();
            is_brick(&g).then_some((seed, g))
        })
        .collect()
}

/// Runs every shore against the first `per_shore` matchings and returns the
/// cases that fired.
fn sweep(bricks: &[(u64, Graph)], per_shore: usize) -> BTreeSet<&'static str> {
    let mut cases = BTreeSet::new();
    for (seed, g) in bricks {
        let n = g.vertex_count();
        let ms = enumerate_perfect_matchings(g, 16).unwrap();
        for shore in canonical_shores(g, 16).unwrap() {
            if shore.len() < 2 || shore.len() + 1 >= n {
                continue;
            }
            for m in ms.iter().take(per_shore) {
                let w = fat_witness(g, &shore, Some(m)).unwrap_or_else(|e| panic!("seed {seed} {shore:?}: {e}"));
                assert!(w.crossing(g) >= 2);
                assert!(ms.contains(&w.output_matching));
                assert_eq!(&w.input_matching, m);
                if let Some(c) = &w.circuit {
                    let switched = w.base_matching.symmetric_difference(g, c.edges().iter().copied()).unwrap();
                    assert_eq!(switched, w.output_matching);
                }
                cases.extend(w.trace.iter().copied());
            }
        }
    }
    cases
}

#[test]
fn random_bricks_get_fat_matchings() {
    let bricks = random_bricks(0..240, &[6, 8]);
    assert!(bricks.len() > 20);
    let cases = sweep(&bricks, 2);
    for case in ["fat-input", "reseed", "not-separating", "mixed/halfopen", "contained/cut-vertex"] {
        assert!(cases.contains(case), "{case} never fired: {cases:?}");
    }
}

#[test]
#[ignore = "several minutes; run with --release"]
fn random_bricks_wide() {
    sweep(&random_bricks(0..3000, &[6, 8, 10]), 6);
}

#[test]
fn petersen_every_shore() {
    let g = catalog::petersen();
    let ms = enumerate_perfect_matchings(&g, 16).unwrap();
    for shore in canonical_shores(&g, 16).unwrap() {
        if shore.len() < 2 || shore.len() > 8 {
            continue;
        }
        let w = fat_witness(&g, &shore, Some(&ms[0])).unwrap();
        assert!(w.crossing(&g) >= 2);
    }
}

#[test]
fn default_matching_is_used_when_none_given() {
    let g = catalog::w5();
    let w = fat_witness(&g, &vset([1, 2]), None).unwrap();
    assert!(w.input_matching.is_perfect(&g));
    assert!(w.crossing(&g) >= 2);
}

#[test]
fn preconditions() {
    let g = catalog::prism();
    assert!(matches!(fat_witness(&g, &vset([1, 9]), None), Err(Error::UnknownVertex(_))));
    let wrong = Matching::from_pairs(&g, &[(1, 2), (4, 5)]).unwrap();
    assert_eq!(fat_witness(&g, &vset([1, 2, 3]), Some(&wrong)), Err(Error::ImperfectMatching(tightcut_core::VertexId(3))));
    assert!(matches!(fat_witness(&catalog::c6(), &vset([1, 2, 3]), None), Err(Error::NotABrick { .. })));
}
