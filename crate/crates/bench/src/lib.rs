//! Shared fixtures for the toolkit benchmarks.

use tempex_core::genbench::{gen_connected, gen_star, GenConfig, GenMode};
use tempex_core::graph::{StarInstance, TemporalGraph};
use tempex_core::reduction::{reduce_star, ReducedInstance};
use tempex_core::walk::SolveMode;

pub fn dense_star(n: usize, lifetime: usize) -> StarInstance {
    gen_star(&GenConfig {
        n,
        lifetime,
        max_appearances: lifetime,
        seed: 0xBEEF,
        mode: GenMode::Star,
    })
}

pub fn connected_instance(n: usize, lifetime: usize) -> TemporalGraph {
    gen_connected(&GenConfig {
        n,
        lifetime,
        max_appearances: 6,
        seed: 0xBEEF,
        mode: GenMode::ConnectedEachStep,
    })
}

pub fn reduced_fixture(n: usize, lifetime: usize) -> ReducedInstance {
    reduce_star(&dense_star(n, lifetime), SolveMode::Explore).expect("non-degenerate")
}
