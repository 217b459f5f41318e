//! Compatibility of quartets, triplets, and multi-state characters.
//!
//! A collection of constraints is compatible when a single leaf-labeled tree
//! displays all of them at once. This crate bundles the decision procedures
//! (exhaustive tree search, quartet-graph unification, connectivity-based
//! triplet testing), generators for extremal constraint families that are
//! incompatible but lose that property when any single element is removed,
//! and line-oriented file formats plus DOT export for the quartet graph.
//!
//! Everything is deterministic: set-valued results are ordered, witnesses
//! are the first hit in a fixed enumeration order, and the randomized
//! verification suites take explicit seeds.

pub mod characters;
pub mod constructions;
mod error;
pub mod formats;
mod label;
pub mod quartets;
mod report;
pub mod trees;
pub mod triplets;
pub mod verify;

pub use error::Error;
pub use label::{Label, LabelUniverse};
pub use report::{CompatReport, MinimalityReport, Verdict};
pub use trees::{Character, Quartet, RootedTree, Triplet, UnrootedTree};
