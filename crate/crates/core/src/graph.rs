//! Mutable simple undirected graph with reversible vertex deletion.
//!
//! Vertices carry their external `u32` labels through every operation, so
//! solutions can be reported in input terms no matter how much of the graph
//! has been deleted in between. Adjacency is kept in ordered sets, which
//! makes every traversal in this crate deterministic for a given state.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

/// External vertex label. Labels are 1-based and never reassigned.
pub type VertexId = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {index}: self-loop at vertex {vertex}")]
    SelfLoop { index: usize, vertex: VertexId },
    #[error("edge {index}: endpoint {vertex} outside 1..={max}")]
    EndpointOutOfRange {
        index: usize,
        vertex: VertexId,
        max: u32,
    },
    #[error("edge {index}: duplicate edge {u} {v}")]
    DuplicateEdge {
        index: usize,
        u: VertexId,
        v: VertexId,
    },
    #[error("graph is not a single tree on at least two vertices")]
    NotATree,
}

/// One reversible deletion: the vertex and its neighbors at deletion time.
#[derive(Debug, Clone)]
struct DeletionRecord {
    vertex: VertexId,
    neighbors: Vec<VertexId>,
}

/// LIFO journal of vertex deletions.
///
/// Deletions must be undone in reverse order; [`Graph::restore_last`] pops
/// the most recent record. Restoring with an empty journal is a contract
/// violation and panics.
#[derive(Debug, Default)]
pub struct UndoJournal {
    records: Vec<DeletionRecord>,
}

impl UndoJournal {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// A simple cycle: distinct vertices, cyclically consecutive ones adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    vertices: Vec<VertexId>,
}

impl Cycle {
    fn new(vertices: Vec<VertexId>) -> Self {
        debug_assert!(vertices.len() >= 3);
        Cycle { vertices }
    }

    /// Cycle vertices in walk order; the closing edge is last-to-first.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Checks the defining invariants against `g` (test support): at least
    /// three distinct vertices, consecutive ones adjacent, closing edge
    /// present.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let vs = &self.vertices;
        if vs.len() < 3 {
            return false;
        }
        let distinct: BTreeSet<_> = vs.iter().collect();
        if distinct.len() != vs.len() {
            return false;
        }
        (0..vs.len()).all(|i| g.has_edge(vs[i], vs[(i + 1) % vs.len()]))
    }
}

/// Simple undirected graph over `u32` labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on vertices `1..=n` from an unordered edge list.
    ///
    /// Rejects self-loops, duplicate edges (in either orientation) and
    /// endpoints outside `1..=n`; the error names the offending edge.
    pub fn build(n: u32, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> =
            (1..=n).map(|v| (v, BTreeSet::new())).collect();
        for (index, &(u, v)) in edges.iter().enumerate() {
            if u == v {
                return Err(GraphError::SelfLoop { index, vertex: u });
            }
            for w in [u, v] {
                if w < 1 || w > n {
                    return Err(GraphError::EndpointOutOfRange {
                        index,
                        vertex: w,
                        max: n,
                    });
                }
            }
            if !adj.get_mut(&u).expect("endpoint checked above").insert(v) {
                return Err(GraphError::DuplicateEdge { index, u, v });
            }
            adj.get_mut(&v).expect("endpoint checked above").insert(u);
        }
        Ok(Graph {
            adj,
            edge_count: edges.len(),
        })
    }

    /// Number of live vertices.
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Number of live edges.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn is_live(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    /// Degree of a live vertex. Panics on a dead vertex: querying one is
    /// always a caller bug, never a recoverable condition.
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj
            .get(&v)
            .unwrap_or_else(|| panic!("degree of dead vertex {v}"))
            .len()
    }

    /// Live vertices in ascending label order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    /// Neighbors of a live vertex in ascending label order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj
            .get(&v)
            .unwrap_or_else(|| panic!("neighbors of dead vertex {v}"))
            .iter()
            .copied()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|ns| ns.contains(&v))
    }

    /// Deletes a live vertex and all incident edges, pushing an undo record.
    ///
    /// Deleting a dead vertex panics: the solver must never try.
    pub fn delete_vertex(&mut self, v: VertexId, journal: &mut UndoJournal) {
        let neighbor_set = self
            .adj
            .remove(&v)
            .unwrap_or_else(|| panic!("delete of dead vertex {v}"));
        let neighbors: Vec<VertexId> = neighbor_set.into_iter().collect();
        for w in &neighbors {
            self.adj
                .get_mut(w)
                .expect("adjacency must be symmetric")
                .remove(&v);
        }
        self.edge_count -= neighbors.len();
        journal.records.push(DeletionRecord {
            vertex: v,
            neighbors,
        });
    }

    /// Undoes the most recent deletion in `journal`, returning the vertex
    /// that came back. Panics if the journal is empty.
    pub fn restore_last(&mut self, journal: &mut UndoJournal) -> VertexId {
        let record = journal
            .records
            .pop()
            .expect("restore_last with an empty journal");
        for w in &record.neighbors {
            self.adj
                .get_mut(w)
                .expect("neighbors of a restored vertex must be live")
                .insert(record.vertex);
        }
        self.edge_count += record.neighbors.len();
        let previous = self
            .adj
            .insert(record.vertex, record.neighbors.iter().copied().collect());
        assert!(
            previous.is_none(),
            "restored vertex {} was already live",
            record.vertex
        );
        record.vertex
    }

    /// Number of connected components among live vertices; 0 when empty.
    pub fn component_count(&self) -> usize {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut components = 0;
        for root in self.adj.keys().copied() {
            if seen.contains(&root) {
                continue;
            }
            components += 1;
            let mut stack = vec![root];
            seen.insert(root);
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
        }
        components
    }

    /// Finds a cycle if one exists.
    ///
    /// The search is fully deterministic: depth-first from the smallest live
    /// vertex, neighbors in ascending order, first back edge wins. On a
    /// triangle 1-2-3 this yields exactly `[1, 2, 3]`.
    pub fn find_cycle(&self) -> Option<Cycle> {
        let mut visited: BTreeSet<VertexId> = BTreeSet::new();
        let mut on_path: BTreeSet<VertexId> = BTreeSet::new();
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let roots: Vec<VertexId> = self.adj.keys().copied().collect();
        for root in roots {
            if visited.contains(&root) {
                continue;
            }
            visited.insert(root);
            on_path.insert(root);
            let mut stack: Vec<(VertexId, Vec<VertexId>, usize)> =
                vec![(root, self.neighbors(root).collect(), 0)];
            while let Some(frame) = stack.last_mut() {
                let (v, neighbors, next) = (frame.0, &frame.1, &mut frame.2);
                if *next >= neighbors.len() {
                    on_path.remove(&v);
                    stack.pop();
                    continue;
                }
                let w = neighbors[*next];
                *next += 1;
                if parent.get(&v) == Some(&w) {
                    // the tree edge back to the parent, not a cycle
                    continue;
                }
                if !visited.contains(&w) {
                    visited.insert(w);
                    on_path.insert(w);
                    parent.insert(w, v);
                    stack.push((w, self.neighbors(w).collect(), 0));
                } else if on_path.contains(&w) {
                    // back edge: walk tree parents from v up to w
                    let mut cycle = vec![v];
                    let mut cur = v;
                    while cur != w {
                        cur = parent[&cur];
                        cycle.push(cur);
                    }
                    cycle.reverse();
                    return Some(Cycle::new(cycle));
                }
                // otherwise w is a finished child seen over its tree edge
            }
        }
        None
    }

    /// True when the graph is acyclic.
    pub fn is_forest(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// True when the subgraph induced by `set` is acyclic.
    ///
    /// Decided by edge counting per induced component, so it stays an
    /// independent check against [`Graph::is_forest`].
    pub fn induced_is_forest(&self, set: &BTreeSet<VertexId>) -> bool {
        debug_assert!(set.iter().all(|&v| self.is_live(v)));
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        for &root in set {
            if seen.contains(&root) {
                continue;
            }
            let mut stack = vec![root];
            seen.insert(root);
            let mut vertices = 0usize;
            let mut degree_sum = 0usize;
            while let Some(v) = stack.pop() {
                vertices += 1;
                for w in self.neighbors(v).filter(|w| set.contains(w)) {
                    degree_sum += 1;
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            if degree_sum / 2 != vertices - 1 {
                return false;
            }
        }
        true
    }

    /// For a single tree on at least two vertices, checks that the total
    /// degree surplus of branching vertices (degree ≥ 3) equals the number
    /// of leaves minus two. Any other graph shape is rejected.
    pub fn check_degree_sum_identity(&self) -> Result<bool, GraphError> {
        let n = self.vertex_count();
        if n < 2 || self.edge_count != n - 1 || self.component_count() != 1 {
            return Err(GraphError::NotATree);
        }
        let mut surplus = 0usize;
        let mut leaves = 0usize;
        for v in self.vertices() {
            let d = self.degree(v);
            if d >= 3 {
                surplus += d - 2;
            } else if d == 1 {
                leaves += 1;
            }
        }
        Ok(surplus == leaves - 2)
    }
}
