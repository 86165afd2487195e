//! Exact feedback vertex set solving.
//!
//! The solver is a branching search that always branches on an undecided
//! vertex of maximum degree, sandwiched between reductions (low-degree
//! stripping and forced deletions), with a polynomial base case once every
//! undecided vertex has degree two and a per-path cap on exclude branches.
//! An optional audit layer records the search and checks the structural
//! facts the analysis of the algorithm rests on.
//!
//! Module map:
//!
//! * [`graph`] — reversible simple graph, cycle finding, forest checks
//! * [`reduce`] — solver state (graph + budget + undeletable set), rules
//! * [`degree_two`] — base case for reduced instances of undecided degree 2
//! * [`branch`] — the search, its statistics, and the minimum sweep
//! * [`audit`] — execution records and their verifier
//! * [`oracle`] — brute-force reference and seeded instance generators
//! * [`cli`] — instance file format and command entry points

pub mod audit;
pub mod branch;
pub mod cli;
pub mod degree_two;
pub mod graph;
pub mod oracle;
pub mod reduce;

pub use audit::{verify_audit, AuditLog, AuditViolation};
pub use branch::{minimum_fvs, select_pivot, solve, SearchStats, Solution};
pub use degree_two::solve_degree_two;
pub use graph::{Cycle, Graph, GraphError, UndoJournal, VertexId};
pub use oracle::{brute_force_min_fvs, gen_planted, gen_random_graph};
pub use reduce::{
    find_forced_vertex, reduce_to_fixpoint, strip_low_degree, ExtendedInstance, ReductionOutcome,
    ReductionStatus,
};
