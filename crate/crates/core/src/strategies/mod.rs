//! Pursuer policies for lazy zombies built from constructive arguments:
//! two zombies on outerplanar graphs, and one zombie per container vertex
//! (or per clique) of a cut decomposition.

mod assignment;
mod outerplanar;

pub use assignment::{CliqueCoverPolicy, CutDecompositionPolicy, ZombieAssignment};
pub use outerplanar::{OuterplanarChaseState, OuterplanarLazyPolicy, Role};

use thiserror::Error;

use crate::decomposition::{DecompositionError, Violation};
use crate::graph::{DistanceMatrix, Graph, GraphError, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StrategyError {
    #[error("graph is not outerplanar: {0}")]
    NotOuterplanar(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(Violation),
    #[error("invalid clique cover: {0}")]
    InvalidCover(String),
    #[error("{needed} zombies are needed, {got} given")]
    InsufficientZombies { needed: usize, got: usize },
    #[error(transparent)]
    Graph(GraphError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

impl From<GraphError> for StrategyError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::NotOuterplanar(s) => StrategyError::NotOuterplanar(s),
            other => StrategyError::Graph(other),
        }
    }
}

/// Lowest-key legal zombie step from `from` towards `target`, ties broken by
/// vertex id. `None` when already there or unreachable.
pub(crate) fn chase_step<K: Ord>(
    g: &Graph,
    d: &DistanceMatrix,
    from: Vertex,
    target: Vertex,
    key: impl Fn(Vertex) -> K,
) -> Option<Vertex> {
    let here = d.get(from, target);
    if here == 0 || here == DistanceMatrix::UNREACHABLE {
        return None;
    }
    g.neighbors(from).iter().copied().filter(|&w| d.get(w, target) + 1 == here).min_by_key(|&w| (key(w), w))
}
