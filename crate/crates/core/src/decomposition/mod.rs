//! Cut decompositions and the treedepth / treewidth / separator machinery
//! that bounds the number of lazy zombies a graph needs.
//!
//! Heights of treedepth trees and loads both count vertices on a chain, so a
//! single vertex has treedepth 1 and a one-container decomposition of `K_n`
//! has load `n`.

mod cover;
mod cut;
mod separator;
mod treedepth;
mod treewidth;

pub use cover::{clique_cover, clique_cover_number, DEFAULT_COVER_LIMIT};
pub use cut::{
    cut_decomposition_to_td_tree, load, load_star, random_cut_decomposition, td_tree_to_cut_decomposition, time,
    time_star, validate_cut_decomposition, CutDecomposition, CutNode, Violation,
};
pub use separator::{check_lemma2, min_alpha_separator, separation_profile, Lemma2Report, SeparatorProfile};
pub use treedepth::{treedepth, treedepth_with_limit, TreedepthTree, DEFAULT_TREEDEPTH_LIMIT};
pub use treewidth::{treewidth_exact, DEFAULT_TREEWIDTH_LIMIT};

use thiserror::Error;

use crate::graph::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("graph too large for exact computation: {0}")]
    TooLarge(String),
    #[error("vertex set of size {size} exceeds the limit of {limit}")]
    SetTooLarge { size: usize, limit: usize },
    #[error("invalid cut decomposition: {0}")]
    InvalidDecomposition(Violation),
    #[error("invalid treedepth tree: {0}")]
    InvalidTree(String),
    #[error("cannot parse: {0}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn mask_of(vertices: &[crate::graph::Vertex]) -> u64 {
    vertices.iter().fold(0u64, |m, &v| m | (1 << v))
}
