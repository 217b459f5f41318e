//! One error type for the whole library.
//!
//! Operations that cross module boundaries (oracles calling tree routines,
//! generators building trees) would otherwise spend their lines converting
//! between per-module enums.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("label name {0:?} is empty or contains a reserved character")]
    InvalidLabelName(String),

    #[error("newick syntax error at byte {pos}: {msg}")]
    NewickSyntax { pos: usize, msg: String },

    #[error("duplicate leaf name {0:?}")]
    DuplicateLeaf(String),

    #[error("tree has no leaves")]
    EmptyTree,

    #[error("not a valid tree: {0}")]
    InvalidTree(String),

    #[error("label is not a leaf of this tree")]
    UnknownLabel,

    #[error("operation needs at least {need} labels, got {got}")]
    TooFewLabels { need: usize, got: usize },

    #[error("constraint repeats a label")]
    RepeatedLabel,

    #[error("character parts must be nonempty and pairwise disjoint")]
    NotAPartition,

    #[error("duplicate constraint at position {0}")]
    DuplicateConstraint(usize),

    #[error("input is empty")]
    EmptyInput,

    #[error("{got} labels exceed the exhaustive-search cap of {cap}")]
    LabelCapExceeded { got: usize, cap: usize },

    #[error("unknown class handle")]
    UnknownClass,

    #[error("unification set must contain at least two classes")]
    UnificationTooSmall,

    #[error("unification set is not admissible: some color has two incident edges")]
    Inadmissible,

    #[error("quartet does not contain the shared label")]
    SharedLabelMissing,

    #[error("label already occurs in the constraint set")]
    LabelNotFresh,

    #[error("characters are over different label sets")]
    MismatchedUniverses,

    #[error("family parameter out of range: {0}")]
    BadFamilyParameter(String),

    #[error("constraint set is compatible; nothing to extract")]
    AlreadyCompatible,

    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}
