//! Pursuit-evasion on graphs: cops, zombies and lazy zombies against a single
//! survivor.
//!
//! The crate covers exact game solving by retrograde analysis, generators for
//! lower-bound graph families, constructive pursuit strategies for outerplanar
//! graphs and for cut decompositions, and the treedepth / treewidth /
//! separator machinery behind the lazy-zombie upper bounds.

pub mod constructions;
pub mod decomposition;
pub mod engine;
pub mod geometry;
pub mod graph;
pub mod oracle;
pub mod solver;
pub mod strategies;
pub mod verify;

pub use engine::{GameVariant, PlacementMode, Trace};
pub use graph::{all_pairs_distances, diameter, DistanceMatrix, Graph, GraphError, Vertex};
pub use solver::{game_number, solve_game, GameNumber, GameNumberResult, GameTable, NumberMode};
