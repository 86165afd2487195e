//! Shared fixtures and checks for the integration suites.

use std::collections::BTreeSet;

use fvs::graph::{Graph, UndoJournal, VertexId};

/// The Petersen graph: 3-regular, 10 vertices, minimum solution size 3.
pub fn petersen() -> Graph {
    Graph::build(
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
    .unwrap()
}

/// Cycle on `1..=n`.
pub fn cycle_graph(n: u32) -> Graph {
    let edges: Vec<(u32, u32)> = (1..=n).map(|u| (u, u % n + 1)).collect();
    Graph::build(n, &edges).unwrap()
}

/// Complete graph on `1..=n`.
pub fn complete_graph(n: u32) -> Graph {
    let edges: Vec<(u32, u32)> = (1..=n)
        .flat_map(|u| ((u + 1)..=n).map(move |v| (u, v)))
        .collect();
    Graph::build(n, &edges).unwrap()
}

/// Every promise a positive answer makes, checked against the originals:
/// within budget, ascending, disjoint from the forbidden set, and actually
/// acyclic after deletion.
pub fn assert_sound(g: &Graph, forbidden: &BTreeSet<VertexId>, budget: i64, solution: &[VertexId]) {
    assert!(solution.len() as i64 <= budget, "solution exceeds budget");
    assert!(
        solution.windows(2).all(|w| w[0] < w[1]),
        "solution not ascending"
    );
    assert!(
        solution.iter().all(|v| !forbidden.contains(v)),
        "solution touches a forbidden vertex"
    );
    let mut scratch = g.clone();
    let mut journal = UndoJournal::new();
    for &v in solution {
        scratch.delete_vertex(v, &mut journal);
    }
    assert!(scratch.is_forest(), "residue still has a cycle");
}
