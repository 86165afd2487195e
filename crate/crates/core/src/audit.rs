//! Execution records of the branching search and their structural checks.
//!
//! In audit mode the search records two kinds of events along the current
//! path: *solution deletions* (a vertex removed from the graph and charged
//! to the solution) and *exclusions* (a vertex parked as undeletable by the
//! exclude branch). Each event stores the vertex's degree at that moment,
//! written `d*` throughout; every solution deletion additionally snapshots
//! the degrees of all currently excluded vertices.
//!
//! From a successful path those snapshots yield, for every excluded vertex
//! `u` and every deletion `x_i`, the *effective decrement* `δ(u, x_i)`: how
//! far `u`'s degree dropped toward the floor of 2 between the deletion of
//! `x_i` and the next deletion (or the end of the run). Degrees below 2 are
//! clamped because a vertex at degree ≤ 1 is already removable for free.
//!
//! [`verify_audit`] then checks three facts the search is designed to keep:
//!
//! 1. the decrements charged to one deletion never exceed its own `d*`,
//! 2. a positive decrement only flows from a deletion whose `d*` is at most
//!    the excluded vertex's `d*` (max-degree branching keeps this order),
//! 3. per excluded vertex the decrements telescope to exactly `d* - 2`,
//!    unless the vertex ended the run live with degree above 2, in which
//!    case it is flagged unverifiable instead of checked.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::graph::{Graph, VertexId};

/// One solution deletion with everything attributed to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionEntry {
    pub vertex: VertexId,
    /// Degree of `vertex` the moment it was deleted.
    pub d_star: usize,
    /// Effective decrements of excluded vertices in this deletion's
    /// interval; zero entries are omitted.
    pub deltas: BTreeMap<VertexId, usize>,
}

/// Record of one vertex parked as undeletable by the exclude branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExclusionEntry {
    /// Degree of the vertex the moment it was excluded.
    pub d_star: usize,
}

/// Frozen record of one successful search path.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AuditLog {
    /// Solution deletions in path order.
    pub deletions: Vec<DeletionEntry>,
    /// Vertices parked by the exclude branch, with their `d*`.
    pub excluded: BTreeMap<VertexId, ExclusionEntry>,
    /// Excluded vertices that ended the run live with degree above 2;
    /// their decrement total is genuinely short of `d* - 2`, so check 3
    /// skips them.
    pub unverifiable: BTreeSet<VertexId>,
}

/// A failed structural check of an [`AuditLog`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditViolation {
    /// Check 1: one deletion got charged more decrement than its own `d*`.
    DecrementBoundExceeded {
        interval: usize,
        deleted: VertexId,
        total: usize,
        d_star: usize,
    },
    /// Check 2: a decrement flowed against the degree order.
    DegreeOrderBroken {
        excluded: VertexId,
        excluded_d_star: usize,
        interval: usize,
        deleted: VertexId,
        deleted_d_star: usize,
    },
    /// Check 3: an excluded vertex's decrements do not sum to `d* - 2`.
    DecrementTotalMismatch {
        excluded: VertexId,
        expected: usize,
        actual: usize,
    },
}

impl fmt::Display for AuditViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuditViolation::DecrementBoundExceeded {
                interval,
                deleted,
                total,
                d_star,
            } => write!(
                f,
                "decrement bound: deletion {interval} (vertex {deleted}) charged {total} > its d* {d_star}"
            ),
            AuditViolation::DegreeOrderBroken {
                excluded,
                excluded_d_star,
                interval,
                deleted,
                deleted_d_star,
            } => write!(
                f,
                "degree order: excluded vertex {excluded} (d* {excluded_d_star}) decremented by deletion {interval} (vertex {deleted}, d* {deleted_d_star})"
            ),
            AuditViolation::DecrementTotalMismatch {
                excluded,
                expected,
                actual,
            } => write!(
                f,
                "decrement total: excluded vertex {excluded} accumulated {actual}, expected d* - 2 = {expected}"
            ),
        }
    }
}

#[derive(Debug, Clone)]
enum RecorderEvent {
    SolutionDeletion {
        vertex: VertexId,
        d_star: usize,
        /// Degrees of all excluded-and-live vertices just before the
        /// deletion. Excluded vertices missing here were stripped earlier.
        excluded_degrees: BTreeMap<VertexId, usize>,
    },
    Exclusion { vertex: VertexId, d_star: usize },
}

/// Rewind point for [`AuditRecorder::rewind`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecorderMark(usize);

/// Path-scoped event recorder driven by the search.
///
/// Besides collecting events it enforces two live invariants on every
/// observation: no vertex's degree ever increases while the search walks
/// down a path, and at every branch point the minimum degree is at least 2.
/// Both are assertions, not reported violations — breaking them means the
/// search itself is buggy, not just its bookkeeping.
#[derive(Debug)]
pub struct AuditRecorder {
    events: Vec<RecorderEvent>,
    /// Last observed degree per live vertex.
    watermarks: BTreeMap<VertexId, usize>,
}

impl AuditRecorder {
    pub fn new(g: &Graph) -> Self {
        AuditRecorder {
            events: Vec::new(),
            watermarks: g.vertices().map(|v| (v, g.degree(v))).collect(),
        }
    }

    pub fn mark(&self) -> RecorderMark {
        RecorderMark(self.events.len())
    }

    /// Drops events recorded after `mark` and resyncs the degree watermarks
    /// to the (restored) graph. Called whenever the search backtracks.
    pub fn rewind(&mut self, mark: RecorderMark, g: &Graph) {
        self.events.truncate(mark.0);
        self.watermarks = g.vertices().map(|v| (v, g.degree(v))).collect();
    }

    fn check_degrees_never_increase(&mut self, g: &Graph) {
        for v in g.vertices() {
            let d = g.degree(v);
            let last = self
                .watermarks
                .get(&v)
                .expect("a vertex appeared that was not live at the last observation");
            assert!(
                d <= *last,
                "degree of vertex {v} increased from {last} to {d} along a search path"
            );
        }
        self.watermarks = g.vertices().map(|v| (v, g.degree(v))).collect();
    }

    /// Called right before `v` is deleted into the solution.
    pub fn record_solution_deletion(&mut self, g: &Graph, v: VertexId) {
        self.check_degrees_never_increase(g);
        let excluded_degrees = self
            .excluded_so_far()
            .into_iter()
            .filter(|u| g.is_live(*u))
            .map(|u| (u, g.degree(u)))
            .collect();
        self.events.push(RecorderEvent::SolutionDeletion {
            vertex: v,
            d_star: g.degree(v),
            excluded_degrees,
        });
    }

    /// Called right before `v` is parked as undeletable.
    pub fn record_exclusion(&mut self, g: &Graph, v: VertexId) {
        self.check_degrees_never_increase(g);
        let d_star = g.degree(v);
        assert!(
            d_star >= 3,
            "excluded pivot {v} has degree {d_star}; degree-2 branch points belong to the cycle-chord solver"
        );
        self.events.push(RecorderEvent::Exclusion { vertex: v, d_star });
    }

    /// Called at every branch point, after reductions are exhausted.
    pub fn observe_branch_point(&mut self, g: &Graph) {
        self.check_degrees_never_increase(g);
        let min_degree = g.vertices().map(|v| g.degree(v)).min();
        assert!(
            min_degree >= Some(2),
            "branch point with minimum degree {min_degree:?}; reductions were not exhausted"
        );
    }

    fn excluded_so_far(&self) -> Vec<VertexId> {
        self.events
            .iter()
            .filter_map(|e| match e {
                RecorderEvent::Exclusion { vertex, .. } => Some(*vertex),
                _ => None,
            })
            .collect()
    }

    /// Turns the recorded path into a checkable log. Called exactly once,
    /// at the leaf where the search succeeded, while the leaf state is
    /// still in place.
    pub fn freeze(&self, g: &Graph) -> AuditLog {
        let mut log = AuditLog::default();
        let mut excluded_so_far: BTreeSet<VertexId> = BTreeSet::new();
        // clamped degree of every already-excluded vertex at each deletion
        let mut snapshots: Vec<(VertexId, usize, BTreeMap<VertexId, usize>)> = Vec::new();
        for event in &self.events {
            match event {
                RecorderEvent::Exclusion { vertex, d_star } => {
                    excluded_so_far.insert(*vertex);
                    log.excluded
                        .insert(*vertex, ExclusionEntry { d_star: *d_star });
                }
                RecorderEvent::SolutionDeletion {
                    vertex,
                    d_star,
                    excluded_degrees,
                } => {
                    let values = excluded_so_far
                        .iter()
                        .map(|&u| (u, excluded_degrees.get(&u).map_or(2, |&d| d.max(2))))
                        .collect();
                    snapshots.push((*vertex, *d_star, values));
                }
            }
        }
        let final_values: BTreeMap<VertexId, usize> = excluded_so_far
            .iter()
            .map(|&u| (u, if g.is_live(u) { g.degree(u).max(2) } else { 2 }))
            .collect();
        for &u in &excluded_so_far {
            if g.is_live(u) && g.degree(u) > 2 {
                log.unverifiable.insert(u);
            }
        }
        for i in 0..snapshots.len() {
            let (vertex, d_star, ref values) = snapshots[i];
            let next_values = if i + 1 < snapshots.len() {
                &snapshots[i + 1].2
            } else {
                &final_values
            };
            let mut deltas = BTreeMap::new();
            for (&u, &value) in values {
                let next = next_values
                    .get(&u)
                    .copied()
                    .expect("excluded set only grows along a path");
                debug_assert!(next <= value, "clamped degrees must not increase");
                if value > next {
                    deltas.insert(u, value - next);
                }
            }
            log.deletions.push(DeletionEntry {
                vertex,
                d_star,
                deltas,
            });
        }
        log
    }
}

/// Runs the three structural checks; an empty result means a clean log.
pub fn verify_audit(log: &AuditLog) -> Vec<AuditViolation> {
    let mut violations = Vec::new();
    for (interval, entry) in log.deletions.iter().enumerate() {
        let total: usize = entry.deltas.values().sum();
        if total > entry.d_star {
            violations.push(AuditViolation::DecrementBoundExceeded {
                interval,
                deleted: entry.vertex,
                total,
                d_star: entry.d_star,
            });
        }
        for (&u, &delta) in &entry.deltas {
            if delta == 0 {
                continue;
            }
            let excluded_d_star = log
                .excluded
                .get(&u)
                .expect("log charges a decrement to a vertex that was never excluded")
                .d_star;
            if excluded_d_star < entry.d_star {
                violations.push(AuditViolation::DegreeOrderBroken {
                    excluded: u,
                    excluded_d_star,
                    interval,
                    deleted: entry.vertex,
                    deleted_d_star: entry.d_star,
                });
            }
        }
    }
    for (&u, entry) in &log.excluded {
        if log.unverifiable.contains(&u) {
            continue;
        }
        let actual: usize = log
            .deletions
            .iter()
            .filter_map(|d| d.deltas.get(&u))
            .sum();
        let expected = entry.d_star - 2;
        if actual != expected {
            violations.push(AuditViolation::DecrementTotalMismatch {
                excluded: u,
                expected,
                actual,
            });
        }
    }
    violations
}
