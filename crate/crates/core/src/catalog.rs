//! Small named graphs used throughout the tests and by the CLI.
//!
//! Vertex ids are 1-based and edge ids follow the listed edge order.

use alloc::vec::Vec;

use crate::graph::Graph;

fn build(n: u32, edges: &[(u32, u32)]) -> Graph {
    Graph::from_edges(1..=n, edges).expect("catalog graphs are well formed")
}

/// Path 1-2-3-4.
pub fn p4() -> Graph {
    build(4, &[(1, 2), (2, 3), (3, 4)])
}

/// Path 1-2-3.
pub fn p3() -> Graph {
    build(3, &[(1, 2), (2, 3)])
}

/// Triangle 1-3-4 with pendant vertex 2 attached to 1.
pub fn paw() -> Graph {
    build(4, &[(1, 2), (1, 3), (1, 4), (3, 4)])
}

pub fn triangle() -> Graph {
    build(3, &[(1, 2), (2, 3), (1, 3)])
}

/// Cycle 1-2-3-4-5-6-1.
pub fn c6() -> Graph {
    build(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)])
}

pub fn k4() -> Graph {
    complete(4)
}

/// Sides {1,2,3} and {4,5,6}.
pub fn k33() -> Graph {
    let mut edges = Vec::new();
    for a in 1..=3 {
        for b in 4..=6 {
            edges.push((a, b));
        }
    }
    build(6, &edges)
}

/// Triangles 123 and 456 joined by rungs 14, 25, 36.
pub fn prism() -> Graph {
    build(
        6,
        &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (1, 4), (2, 5), (3, 6)],
    )
}

/// Outer cycle 1..5, spokes i-(i+5), inner pentagram 6-8-10-7-9-6.
pub fn petersen() -> Graph {
    build(
        10,
        &[
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 1),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
            (5, 10),
            (6, 8),
            (8, 10),
            (10, 7),
            (7, 9),
            (9, 6),
        ],
    )
}

/// Wheel with rim 1-2-3-4-5 and hub 6.
pub fn w5() -> Graph {
    build(
        6,
        &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 6), (2, 6), (3, 6), (4, 6), (5, 6)],
    )
}

pub fn complete(n: u32) -> Graph {
    let mut edges = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            edges.push((a, b));
        }
    }
    build(n, &edges)
}

/// Looks up a catalog graph by its lowercase name.
pub fn by_name(name: &str) -> Option<Graph> {
    Some(match name {
        "p3" => p3(),
        "p4" => p4(),
        "paw" => paw(),
        "triangle" => triangle(),
        "c6" => c6(),
        "k4" => k4(),
        "k33" => k33(),
        "prism" => prism(),
        "petersen" => petersen(),
        "w5" => w5(),
        _ => return None,
    })
}

pub const NAMES: [&str; 10] = [
    "p3", "p4", "paw", "triangle", "c6", "k4", "k33", "prism", "petersen", "w5",
];

/// The bricks of the catalog.
pub fn bricks() -> [(&'static str, Graph); 4] {
    [("K4", k4()), ("W5", w5()), ("PRISM", prism()), ("PETERSEN", petersen())]
}
