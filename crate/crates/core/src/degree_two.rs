//! Polynomial base case: every undecided vertex has degree exactly two.
//!
//! Once reductions are exhausted and the highest undecided degree is 2, no
//! further branching is needed. Every remaining cycle must lose a vertex,
//! lost vertices cannot reconnect anything, and each deletion of a
//! degree-2 vertex reduces the cycle rank `m - n + c` by exactly one — so
//! the instance needs exactly `m - n + c` deletions, no fewer, and the
//! greedy loop below achieves that bound.

use crate::audit::AuditRecorder;
use crate::graph::VertexId;
use crate::reduce::{find_forced_vertex, ExtendedInstance};

/// Solves a reduced instance whose undecided vertices all have degree 2 by
/// repeatedly deleting the smallest-label undecided vertex of some cycle.
///
/// Returns the deleted vertices in deletion order; the count always equals
/// the cycle rank `m - n + c` measured at entry. The budget is not touched
/// or consulted — comparing `result.len()` against it is the caller's job.
///
/// Preconditions (contract violations panic): nonempty graph, minimum
/// degree ≥ 2, no forced vertex, every undecided vertex of degree exactly 2.
pub fn solve_degree_two(
    inst: &mut ExtendedInstance,
    mut recorder: Option<&mut AuditRecorder>,
) -> Vec<VertexId> {
    let g = inst.graph();
    assert!(!g.is_empty(), "degree-two solve on an empty graph");
    assert!(
        g.vertices().all(|v| g.degree(v) >= 2),
        "degree-two solve on an unstripped graph"
    );
    assert!(
        inst.undecided().all(|v| inst.graph().degree(v) == 2),
        "degree-two solve with an undecided vertex of degree > 2"
    );
    debug_assert!(
        find_forced_vertex(inst).is_none(),
        "degree-two solve with a forced vertex pending"
    );

    let (n, m, c) = (
        inst.graph().vertex_count(),
        inst.graph().edge_count(),
        inst.graph().component_count(),
    );
    let cycle_rank = (m + c) - n;

    let mut picked = Vec::new();
    while let Some(cycle) = inst.graph().find_cycle() {
        let x = cycle
            .vertices()
            .iter()
            .copied()
            .filter(|&v| inst.is_undecided(v))
            .min()
            .expect("cycle with every vertex undeletable: state is corrupted");
        if let Some(rec) = recorder.as_deref_mut() {
            rec.record_solution_deletion(inst.graph(), x);
        }
        inst.delete(x);
        picked.push(x);
    }
    assert_eq!(
        picked.len(),
        cycle_rank,
        "degree-two loop must delete exactly cycle-rank many vertices"
    );
    picked
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::graph::Graph;

    fn instance(n: u32, edges: &[(u32, u32)], undeletable: &[u32]) -> ExtendedInstance {
        ExtendedInstance::new(
            Graph::build(n, edges).unwrap(),
            0,
            undeletable.iter().copied().collect(),
        )
    }

    #[test]
    fn three_disjoint_cycles_need_three_deletions() {
        let edges = [
            (1, 2),
            (2, 3),
            (3, 1),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 4),
            (8, 9),
            (9, 10),
            (10, 8),
        ];
        let mut inst = instance(10, &edges, &[]);
        let picked = solve_degree_two(&mut inst, None);
        assert_eq!(picked.len(), 3);
        assert!(inst.graph().is_forest());
    }

    #[test]
    fn undeletable_cycle_vertices_are_skipped() {
        // 5-cycle with two adjacent undeletable vertices
        let edges = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)];
        let mut inst = instance(5, &edges, &[1, 2]);
        let picked = solve_degree_two(&mut inst, None);
        assert_eq!(picked, vec![3]);
    }

    #[test]
    fn deletion_choice_is_smallest_undecided_on_the_cycle() {
        let edges = [(1, 2), (2, 3), (3, 1)];
        let mut inst = instance(3, &edges, &[1]);
        let picked = solve_degree_two(&mut inst, None);
        assert_eq!(picked, vec![2]);
    }

    #[test]
    fn count_matches_cycle_rank_with_undeletable_hubs() {
        // two non-adjacent undeletable hubs joined by three length-2
        // undecided paths: cycle rank 2, hubs untouchable
        let edges = [(1, 3), (3, 2), (1, 4), (4, 2), (1, 5), (5, 2)];
        let mut inst = instance(5, &edges, &[1, 2]);
        let m = inst.graph().edge_count();
        let n = inst.graph().vertex_count();
        let c = inst.graph().component_count();
        let picked = solve_degree_two(&mut inst, None);
        assert_eq!(picked.len(), m - n + c);
        assert_eq!(picked.len(), 2);
        assert!(inst.graph().is_forest());
        assert!(picked.iter().all(|v| ![1, 2].contains(v)));
    }

    #[test]
    fn leftover_forest_has_expected_size() {
        // every component keeps a spanning tree: 2n - m - c vertices survive
        let edges = [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)];
        let mut inst = instance(6, &edges, &[]);
        let (n, m, c) = (6usize, 6usize, 2usize);
        let picked = solve_degree_two(&mut inst, None);
        assert_eq!(picked.len(), m - n + c);
        assert_eq!(inst.graph().vertex_count(), 2 * n - m - c);
        assert_eq!(inst.graph().component_count(), c);
    }

    #[test]
    #[should_panic(expected = "degree > 2")]
    fn high_degree_undecided_vertex_is_a_contract_violation() {
        // 4-clique: undecided degree 3
        let edges = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        let mut inst = instance(4, &edges, &[]);
        solve_degree_two(&mut inst, None);
    }

    #[test]
    #[should_panic(expected = "unstripped")]
    fn low_degree_vertex_is_a_contract_violation() {
        let mut inst = instance(4, &[(1, 2), (2, 3), (3, 1), (3, 4)], &[]);
        solve_degree_two(&mut inst, None);
    }

    #[test]
    fn matches_brute_force_minimum_on_valid_instances() {
        use crate::oracle;
        let mut checked = 0;
        for seed in 0..200u64 {
            let (graph, undeletable) = oracle::gen_degree_two(seed);
            if graph.vertex_count() > 14 {
                continue;
            }
            let best = oracle::brute_force_min_fvs(&graph, &undeletable)
                .unwrap()
                .expect("valid degree-two instances are always solvable");
            let mut inst = ExtendedInstance::new(graph, 0, undeletable.clone());
            let picked = solve_degree_two(&mut inst, None);
            assert_eq!(picked.len(), best.len(), "seed {seed}");
            assert!(picked.iter().all(|v| !undeletable.contains(v)));
            assert!(inst.graph().is_forest());
            checked += 1;
        }
        assert!(checked >= 50, "only {checked} instances were small enough");
    }

    #[test]
    fn solution_avoids_undeletable_set_always() {
        use crate::oracle;
        for seed in 200..300u64 {
            let (graph, undeletable) = oracle::gen_degree_two(seed);
            let mut inst = ExtendedInstance::new(graph.clone(), 0, undeletable.clone());
            let picked = solve_degree_two(&mut inst, None);
            let set: BTreeSet<_> = picked.iter().copied().collect();
            assert_eq!(set.len(), picked.len(), "seed {seed}: repeated deletion");
            assert!(set.is_disjoint(&undeletable), "seed {seed}");
        }
    }
}
