//! Discrete Morse theory for independence complexes of comb graphs.
//!
//! The crate builds the graph families Δ^m_n (combs), Y^m_n (extended stars),
//! Ŷ^m_n (theta graphs) and 2×N grids, enumerates their independence and
//! matching complexes, grows matching trees with deterministic pivot scripts,
//! and compares the resulting critical-cell censuses against closed-form
//! recursions and exact integral homology.
//!
//! Module map:
//!
//! - [`graphs`]: labeled graph families, line graphs, the Δ^2_n ≅ L(Γ_n) map.
//! - [`complexes`]: face enumeration, joins, f-vectors, reduced Euler characteristic.
//! - [`morse`]: the matching-tree engine, induced face pairings, acyclicity check.
//! - [`comb`]: pivot scripts for paths, stars, theta graphs and the comb recursion.
//! - [`census`]: cell-count tables, Euler recursions, Riordan array, dimension bounds.
//! - [`homology`]: sparse Smith normal form and reduced integral homology.
//! - [`verify`]: the cross-module check suite behind `mg verify`.
//! - [`cli`]: argument parsing and dispatch for the `mg` binary.

pub mod census;
pub mod cli;
pub mod comb;
pub mod complexes;
mod error;
pub mod graphs;
pub mod homology;
pub mod morse;
pub mod verify;

pub use error::{Error, Result};

pub use census::{CensusTable, DimensionBounds};
pub use comb::{CriticalCensus, StrategyScript};
pub use complexes::{FVector, Face, SimplicialComplex};
pub use graphs::{Graph, VertexLabel};
pub use homology::{HomologyReport, IntegerMatrix, SnfResult};
pub use morse::{FacePairing, MatchingTree, SigmaNode, Step, Strategy};
