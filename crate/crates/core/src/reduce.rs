//! Solver state and the two reduction rules applied between branchings.
//!
//! An [`ExtendedInstance`] is the graph together with a deletion budget and
//! a set of vertices marked *undeletable* — vertices some branch has
//! committed to keeping, which therefore must stay acyclic among
//! themselves. A live vertex that is not undeletable is *undecided*.
//!
//! Two rules shrink an instance without branching:
//!
//! * **low-degree strip** — a vertex of degree ≤ 1 lies on no cycle, so it
//!   can be removed outright (leaving the undeletable set if it was in it),
//!   at no budget cost;
//! * **forced deletion** — an undecided vertex with two neighbors in the
//!   same component of the undeletable subgraph would close a cycle through
//!   undeletable vertices; keeping it is impossible, so it is deleted and
//!   charged to the budget.
//!
//! [`reduce_to_fixpoint`] alternates them until neither applies, the graph
//! empties, or the budget goes negative.

use std::collections::{BTreeMap, BTreeSet};

use crate::audit::AuditRecorder;
use crate::graph::{Graph, UndoJournal, VertexId};

#[derive(Debug, Clone, Copy)]
enum Event {
    Deleted {
        vertex: VertexId,
        was_undeletable: bool,
    },
    MarkedUndeletable(VertexId),
    BudgetSpent,
}

/// Rollback point for [`ExtendedInstance::rollback_to`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checkpoint(usize);

/// A graph with a deletion budget and an undeletable vertex set.
///
/// The budget may go negative transiently — that is how an exhausted branch
/// announces itself. The undeletable set always induces a forest; every
/// mutating method re-checks that in debug builds.
#[derive(Debug)]
pub struct ExtendedInstance {
    graph: Graph,
    budget: i64,
    undeletable: BTreeSet<VertexId>,
    journal: UndoJournal,
    events: Vec<Event>,
}

impl ExtendedInstance {
    /// Wraps a graph for solving. `undeletable` must be live vertices
    /// inducing a forest; both are contract violations otherwise.
    pub fn new(graph: Graph, budget: i64, undeletable: BTreeSet<VertexId>) -> Self {
        assert!(
            undeletable.iter().all(|&v| graph.is_live(v)),
            "undeletable set contains a vertex outside the graph"
        );
        assert!(
            graph.induced_is_forest(&undeletable),
            "undeletable set must induce a forest"
        );
        ExtendedInstance {
            graph,
            budget,
            undeletable,
            journal: UndoJournal::new(),
            events: Vec::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn budget(&self) -> i64 {
        self.budget
    }

    pub fn undeletable(&self) -> &BTreeSet<VertexId> {
        &self.undeletable
    }

    pub fn is_undecided(&self, v: VertexId) -> bool {
        self.graph.is_live(v) && !self.undeletable.contains(&v)
    }

    /// Undecided vertices in ascending label order.
    pub fn undecided(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.graph
            .vertices()
            .filter(|v| !self.undeletable.contains(v))
    }

    /// Deletes a live vertex, dropping it from the undeletable set if it
    /// was there. Budget is untouched; callers decide what to charge.
    pub fn delete(&mut self, v: VertexId) {
        let was_undeletable = self.undeletable.remove(&v);
        self.graph.delete_vertex(v, &mut self.journal);
        self.events.push(Event::Deleted {
            vertex: v,
            was_undeletable,
        });
        self.debug_check_undeletable();
    }

    /// Charges one unit of budget.
    pub fn spend_budget(&mut self) {
        self.budget -= 1;
        self.events.push(Event::BudgetSpent);
    }

    /// Parks a live undecided vertex as undeletable.
    pub fn mark_undeletable(&mut self, v: VertexId) {
        assert!(self.is_undecided(v), "vertex {v} cannot be parked");
        self.undeletable.insert(v);
        self.events.push(Event::MarkedUndeletable(v));
        self.debug_check_undeletable();
    }

    pub fn checkpoint(&self) -> Checkpoint {
        Checkpoint(self.events.len())
    }

    /// Rolls graph, budget and undeletable set back to `cp`, undoing
    /// deletions in reverse order.
    pub fn rollback_to(&mut self, cp: Checkpoint) {
        assert!(cp.0 <= self.events.len(), "checkpoint from the future");
        while self.events.len() > cp.0 {
            match self.events.pop().expect("length checked") {
                Event::Deleted {
                    vertex,
                    was_undeletable,
                } => {
                    let restored = self.graph.restore_last(&mut self.journal);
                    debug_assert_eq!(restored, vertex);
                    if was_undeletable {
                        self.undeletable.insert(vertex);
                    }
                }
                Event::MarkedUndeletable(v) => {
                    self.undeletable.remove(&v);
                }
                Event::BudgetSpent => self.budget += 1,
            }
        }
    }

    fn debug_check_undeletable(&self) {
        debug_assert!(self.undeletable.iter().all(|&v| self.graph.is_live(v)));
        debug_assert!(
            self.graph.induced_is_forest(&self.undeletable),
            "undeletable set stopped inducing a forest"
        );
    }
}

/// How a reduction pass ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionStatus {
    /// Neither rule applies: nonempty graph, minimum degree ≥ 2, no forced
    /// vertex. Ready for a branching decision.
    Reduced,
    /// The graph emptied with budget intact — this branch is solved.
    SolvedEmpty,
    /// The budget went negative — this branch is dead.
    BudgetExhausted,
}

/// What a reduction pass did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutcome {
    pub status: ReductionStatus,
    /// Forced deletions in execution order; each cost one budget unit.
    pub forced_deletions: Vec<VertexId>,
    /// Low-degree strips in execution order; free.
    pub stripped: Vec<VertexId>,
}

/// Repeatedly removes vertices of degree ≤ 1, smallest label first,
/// returning them in deletion order. Budget is untouched.
pub fn strip_low_degree(inst: &mut ExtendedInstance) -> Vec<VertexId> {
    let mut removed = Vec::new();
    let mut candidates: BTreeSet<VertexId> = inst
        .graph()
        .vertices()
        .filter(|&v| inst.graph().degree(v) <= 1)
        .collect();
    while let Some(&v) = candidates.iter().next() {
        candidates.remove(&v);
        // degrees only drop, so a queued candidate is still strippable
        let neighbors: Vec<VertexId> = inst.graph().neighbors(v).collect();
        inst.delete(v);
        removed.push(v);
        for w in neighbors {
            if inst.graph().degree(w) <= 1 {
                candidates.insert(w);
            }
        }
    }
    removed
}

/// Finds the smallest-label undecided vertex with two neighbors in one
/// component of the undeletable subgraph, if any. Components are computed
/// fresh from the current graph on every call.
pub fn find_forced_vertex(inst: &ExtendedInstance) -> Option<VertexId> {
    let undeletable = inst.undeletable();
    if undeletable.is_empty() {
        return None;
    }
    let mut component: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut next_label = 0usize;
    for &root in undeletable {
        if component.contains_key(&root) {
            continue;
        }
        component.insert(root, next_label);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for w in inst.graph().neighbors(v) {
                if undeletable.contains(&w) && !component.contains_key(&w) {
                    component.insert(w, next_label);
                    stack.push(w);
                }
            }
        }
        next_label += 1;
    }
    for v in inst.undecided() {
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        for w in inst.graph().neighbors(v) {
            if let Some(&c) = component.get(&w) {
                if !seen.insert(c) {
                    return Some(v);
                }
            }
        }
    }
    None
}

/// Alternates stripping and forced deletions until a fixpoint.
///
/// The budget is re-checked before any work and after every forced
/// deletion; the pass aborts the moment it goes negative. Forced deletions
/// are reported to `recorder` (when present) before they happen.
pub fn reduce_to_fixpoint(
    inst: &mut ExtendedInstance,
    mut recorder: Option<&mut AuditRecorder>,
) -> ReductionOutcome {
    let mut forced_deletions = Vec::new();
    let mut stripped = Vec::new();
    let status = loop {
        if inst.budget() < 0 {
            break ReductionStatus::BudgetExhausted;
        }
        stripped.extend(strip_low_degree(inst));
        if inst.graph().is_empty() {
            break ReductionStatus::SolvedEmpty;
        }
        match find_forced_vertex(inst) {
            Some(v) => {
                if let Some(rec) = recorder.as_deref_mut() {
                    rec.record_solution_deletion(inst.graph(), v);
                }
                inst.delete(v);
                inst.spend_budget();
                forced_deletions.push(v);
            }
            None => break ReductionStatus::Reduced,
        }
    };
    if status == ReductionStatus::Reduced {
        debug_assert!(inst.graph().vertices().all(|v| inst.graph().degree(v) >= 2));
        debug_assert!(find_forced_vertex(inst).is_none());
    }
    debug_assert_eq!(
        inst.budget() >= 0,
        status != ReductionStatus::BudgetExhausted
    );
    ReductionOutcome {
        status,
        forced_deletions,
        stripped,
    }
}
