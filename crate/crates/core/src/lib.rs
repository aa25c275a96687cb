//! Temporal-graph exploration toolkit.
//!
//! The crate models temporal graphs (one edge set per time step) and
//! temporal walks, provides exact solvers for the exploration and
//! return-to-base problems, builds the star-to-path gadget whose snapshots
//! are trees and whose underlying graph has pathwidth 2, and validates the
//! structures that make the gadget work: tree snapshots, the width-2 path
//! decomposition, and the walk maps between the two problems.

pub mod format;
pub mod genbench;
pub mod graph;
pub mod pathwidth;
pub mod reduction;
pub mod solver;
pub mod walk;

pub use format::{parse_instance, parse_walk, serialize_instance, serialize_walk, ParseError};
pub use graph::{edge, Edge, StarInstance, StaticGraph, TemporalGraph, ValidationReport};
pub use pathwidth::{
    build_reduction_decomposition, exact_pathwidth, is_caterpillar, validate_decomposition,
    PathDecomposition,
};
pub use reduction::{
    anchor_index, lift_walk, parse_reduced, project_walk, q_value, reduce_star,
    reduce_star_faulty, serialize_reduced, ReducedInstance, ReductionFault,
};
pub use solver::{
    brute_force_min_time, brute_force_solvable, check_center_at_phase_end, check_path_band,
    enumerate_walks, for_each_walk, solve, solve_with, SolveError, SolveOptions, SolveResult,
    DEFAULT_WALK_BUDGET, MAX_SOLVER_VERTICES,
};
pub use walk::{validate_walk, SolveMode, TemporalWalk, WalkReport};
