//! Shared fixtures for the criterion benchmarks.

use pursuit_core::constructions::{gk_clique, standard_graph, StandardKind};
use pursuit_core::Graph;

pub fn cycle(n: usize) -> Graph {
    standard_graph(StandardKind::Cycle, n, 0).expect("cycle")
}

pub fn fan(n: usize) -> Graph {
    standard_graph(StandardKind::Fan, n, 0).expect("fan")
}

pub fn random_connected(n: usize, seed: u64) -> Graph {
    standard_graph(StandardKind::RandomConnected, n, seed).expect("random connected graph")
}

/// The smallest clique-centred family member.
pub fn clique_family() -> Graph {
    gk_clique(2, 6).expect("clique family").graph.expect("graph is built")
}
