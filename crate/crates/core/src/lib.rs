//! Oriented and directed Ramsey numbers of trees.
//!
//! * [`digraph`]: hosts, trees, embeddings and the containment oracles.
//! * [`decompose`]: structural decompositions of oriented trees.
//! * [`catalog`]: enumeration of small trees and paths, named targets.
//! * [`engine`]: constructive embedders returning checkable certificates.
//! * [`constructions`]: explicit extremal colourings with self-verification.
//! * [`search`]: exact Ramsey values by exhaustive, isomorph-free search.
//! * [`suite`]: the end-to-end acceptance checks.
//! * [`random`]: seeded random hosts and trees.

pub mod catalog;
pub mod constructions;
pub mod decompose;
pub mod digraph;
pub mod engine;
pub mod random;
pub mod search;
pub mod suite;
