//! Partition a vertex-weighted graph into K size-balanced, Q-vertex-connected,
//! compactness-optimal parts.
//!
//! The crate provides:
//!
//! * [`graph`] — the graph type plus the connectivity and separator primitives
//!   (minimum vertex cutsets via unit-capacity max-flow, minimal a,b-separators,
//!   block decomposition, cycle finding).
//! * [`instance`] — problem instances, JSON / edge-list I/O, preprocessing
//!   (largest 2-connected block extraction, connectivity raising) and synthetic
//!   generators (grid, cycle, complete, random, Mycielskian).
//! * [`model`] — the root-assignment master model, degree valid inequalities,
//!   partition extraction and feasibility verification.
//! * [`exact`] — a branch-and-bound solver with lazy separator cuts produced by
//!   the integer Q-connectivity separation routine, plus LP-file export.
//! * [`heuristic`] — the four-stage ear-construction heuristic for Q = 2.
//! * [`report`] — result records, comparison metrics, DOT export and the
//!   separation-settings matrix runner.

pub mod exact;
pub mod graph;
pub mod heuristic;
pub mod instance;
pub mod model;
pub mod report;

pub use exact::{separate, solve_exact, CutKind, CutMode, SeparatorCut, SolveResult, SolveStatus, SolverSettings};
pub use graph::{Cutset, Graph, GraphError};
pub use heuristic::{solve_heuristic, HeuristicError, HeuristicSettings, HeuristicTrace};
pub use instance::{build_cost_matrix, Balance, CostMatrix, Instance, InstanceError};
pub use model::{
    add_degree_inequalities, build_hess_model, evaluate_balance, evaluate_compactness,
    partition_from_assignment, theorem1_oracle, verify_feasible, Assignment, FeasibilityReport,
    MipModel, ModelError, Partition,
};
pub use report::{approximation_gap, geometric_mean_ratio, RunOutput};
