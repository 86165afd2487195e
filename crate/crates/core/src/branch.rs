//! Branching search: always branch on an undecided vertex of maximum
//! degree, include-first, with a cap on exclusions per path.
//!
//! Each search node reduces its instance to a fixpoint, then either closes
//! the path (solved, dead, or the degree-2 base case) or picks the
//! maximum-degree undecided vertex — the *pivot* — and tries two children:
//! delete the pivot into the solution (charging the budget), or park it as
//! undeletable. Branching on maximum degree is what makes the exclusion
//! side cheap: an instance with starting budget `k` never needs more than
//! `3k` exclusions on one path, so with the cap enabled a path holds at
//! most `4k + 1` nodes and the whole tree at most `2^(4k+1)` nodes.
//!
//! The include child is only visited while budget remains — a child born
//! with negative budget is dead on arrival, and skipping it keeps the path
//! bound exact.

use std::collections::BTreeSet;

use crate::audit::{AuditLog, AuditRecorder};
use crate::degree_two::solve_degree_two;
use crate::graph::{Graph, VertexId};
use crate::reduce::{reduce_to_fixpoint, ExtendedInstance, ReductionStatus};

/// Outcome of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// Deleting these vertices (ascending) leaves a forest; the set is
    /// disjoint from the initial undeletable set and within budget.
    Found(Vec<VertexId>),
    /// No feedback vertex set within budget avoids the undeletable set.
    No,
}

impl Solution {
    pub fn is_found(&self) -> bool {
        matches!(self, Solution::Found(_))
    }
}

/// Counters describing one `solve` run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Search nodes entered.
    pub nodes_visited: u64,
    /// Longest root-to-node path, counted in nodes.
    pub max_path_length: u64,
    /// Exclude children skipped by the exclusion cap.
    pub cutoff_hits: u64,
    /// Exclusions on the successful path, when one was found.
    pub f_prime_on_success: Option<u64>,
}

/// The undecided vertex of maximum degree, smallest label on ties.
/// Calling this with no undecided vertices left is a contract violation.
pub fn select_pivot(inst: &ExtendedInstance) -> VertexId {
    let mut best: Option<(VertexId, usize)> = None;
    for v in inst.undecided() {
        let d = inst.graph().degree(v);
        match best {
            Some((_, bd)) if d <= bd => {}
            _ => best = Some((v, d)),
        }
    }
    best.expect("branch point with no undecided vertices: state is corrupted")
        .0
}

struct Searcher<'a> {
    cutoffs_enabled: bool,
    /// Maximum exclusions allowed on one path: three times the root budget.
    exclusion_cap: u64,
    stats: &'a mut SearchStats,
    recorder: Option<AuditRecorder>,
    /// Solution deletions along the current path, in execution order.
    path: Vec<VertexId>,
    exclusions_on_path: u64,
    solution: Option<Vec<VertexId>>,
    frozen_audit: Option<AuditLog>,
}

impl Searcher<'_> {
    /// One search node. Returns true when a solution was found below it.
    /// The instance always leaves exactly as it entered.
    fn search(&mut self, inst: &mut ExtendedInstance, path_nodes: u64) -> bool {
        self.stats.nodes_visited += 1;
        self.stats.max_path_length = self.stats.max_path_length.max(path_nodes);
        let cp = inst.checkpoint();
        let path_mark = self.path.len();
        let audit_mark = self.recorder.as_ref().map(|r| r.mark());

        let outcome = reduce_to_fixpoint(inst, self.recorder.as_mut());
        self.path.extend_from_slice(&outcome.forced_deletions);

        let found = match outcome.status {
            ReductionStatus::BudgetExhausted => false,
            ReductionStatus::SolvedEmpty => {
                self.complete(inst);
                true
            }
            ReductionStatus::Reduced => {
                if let Some(rec) = self.recorder.as_mut() {
                    rec.observe_branch_point(inst.graph());
                }
                let pivot = select_pivot(inst);
                if inst.graph().degree(pivot) == 2 {
                    let picked = solve_degree_two(inst, self.recorder.as_mut());
                    if picked.len() as i64 <= inst.budget() {
                        self.path.extend_from_slice(&picked);
                        self.complete(inst);
                        true
                    } else {
                        false
                    }
                } else {
                    self.branch(inst, pivot, path_nodes)
                }
            }
        };

        inst.rollback_to(cp);
        self.path.truncate(path_mark);
        if let Some(rec) = self.recorder.as_mut() {
            rec.rewind(audit_mark.expect("mark exists with recorder"), inst.graph());
        }
        found
    }

    /// Tries both children of a branch point: delete the pivot, then park it.
    fn branch(&mut self, inst: &mut ExtendedInstance, pivot: VertexId, path_nodes: u64) -> bool {
        if inst.budget() >= 1 {
            let cp = inst.checkpoint();
            let path_mark = self.path.len();
            let audit_mark = self.recorder.as_ref().map(|r| r.mark());
            if let Some(rec) = self.recorder.as_mut() {
                rec.record_solution_deletion(inst.graph(), pivot);
            }
            inst.delete(pivot);
            inst.spend_budget();
            self.path.push(pivot);
            if self.search(inst, path_nodes + 1) {
                return true;
            }
            inst.rollback_to(cp);
            self.path.truncate(path_mark);
            if let Some(rec) = self.recorder.as_mut() {
                rec.rewind(audit_mark.expect("mark exists with recorder"), inst.graph());
            }
        }
        if self.cutoffs_enabled && self.exclusions_on_path >= self.exclusion_cap {
            self.stats.cutoff_hits += 1;
            return false;
        }
        if let Some(rec) = self.recorder.as_mut() {
            rec.record_exclusion(inst.graph(), pivot);
        }
        inst.mark_undeletable(pivot);
        self.exclusions_on_path += 1;
        let found = self.search(inst, path_nodes + 1);
        self.exclusions_on_path -= 1;
        // the parking itself is rolled back by this node's epilogue
        found
    }

    /// Freezes the successful path while the leaf state is still in place.
    fn complete(&mut self, inst: &ExtendedInstance) {
        self.stats.f_prime_on_success = Some(self.exclusions_on_path);
        let mut solution = self.path.clone();
        solution.sort_unstable();
        self.solution = Some(solution);
        if let Some(rec) = self.recorder.as_ref() {
            self.frozen_audit = Some(rec.freeze(inst.graph()));
        }
    }
}

/// Decides whether `inst` has a feedback vertex set within its budget that
/// avoids its undeletable set, leaving `inst` exactly as it was.
///
/// With `cutoffs_enabled` the exclude branch is refused once a path has
/// parked three-times-budget vertices; paths then stay within `4k + 1`
/// nodes. Without cutoffs the search is the plain recursion (useful for
/// differential testing). When `audit` is given, the run records its
/// events and writes the successful path's log there (an empty log when
/// the answer is no).
pub fn solve(
    inst: &mut ExtendedInstance,
    cutoffs_enabled: bool,
    stats: &mut SearchStats,
    audit: Option<&mut AuditLog>,
) -> Solution {
    let exclusion_cap = (3 * inst.budget()).max(0) as u64;
    let mut searcher = Searcher {
        cutoffs_enabled,
        exclusion_cap,
        stats,
        recorder: audit.as_ref().map(|_| AuditRecorder::new(inst.graph())),
        path: Vec::new(),
        exclusions_on_path: 0,
        solution: None,
        frozen_audit: None,
    };
    let found = searcher.search(inst, 1);
    let solution = searcher.solution.take();
    let frozen = searcher.frozen_audit.take();
    if let Some(out) = audit {
        *out = frozen.unwrap_or_default();
    }
    if found {
        Solution::Found(solution.expect("a found search stores its solution"))
    } else {
        Solution::No
    }
}

/// Smallest feedback vertex set of `g`, found by solving budgets 0, 1, 2, …
/// in turn. Result is ascending.
pub fn minimum_fvs(g: &Graph) -> Vec<VertexId> {
    for budget in 0..=(g.vertex_count() as i64) {
        let mut inst = ExtendedInstance::new(g.clone(), budget, BTreeSet::new());
        let mut stats = SearchStats::default();
        if let Solution::Found(solution) = solve(&mut inst, true, &mut stats, None) {
            return solution;
        }
    }
    unreachable!("deleting every vertex always leaves a forest")
}
