//! Streaming enumeration of binary trees over a fixed label set.
//!
//! Trees are generated by inserting leaves in sorted label order: each
//! insertion subdivides one existing edge (or, for rooted trees, may add a
//! new root above the old one). The choices form a mixed-radix counter, so
//! the order is deterministic, every tree appears exactly once, and
//! [`unrooted_tree_at`] / [`rooted_tree_at`] give random access for callers
//! that want to partition the index range.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::label::Label;

use super::{RootedTree, UnrootedTree};

/// Number of unrooted binary trees on `n` labels: (2n-5)!! for n >= 2.
pub fn unrooted_binary_count(n: usize) -> u64 {
    if n < 3 {
        return 1;
    }
    (3..n).fold(1u64, |acc, k| {
        acc.checked_mul(2 * k as u64 - 3).expect("tree count exceeds u64")
    })
}

/// Number of rooted binary trees on `n` labels: (2n-3)!! for n >= 1.
pub fn rooted_binary_count(n: usize) -> u64 {
    if n < 2 {
        return 1;
    }
    (1..n).fold(1u64, |acc, k| {
        acc.checked_mul(2 * k as u64 - 1).expect("tree count exceeds u64")
    })
}

/// All unrooted binary trees on `labels`, lazily. Needs at least two labels.
pub fn unrooted_binary(labels: &BTreeSet<Label>) -> Result<UnrootedEnumerator, Error> {
    if labels.len() < 2 {
        return Err(Error::TooFewLabels { need: 2, got: labels.len() });
    }
    let labels: Vec<Label> = labels.iter().copied().collect();
    let radices: Vec<usize> = (0..labels.len().saturating_sub(3)).map(|i| 2 * i + 3).collect();
    Ok(UnrootedEnumerator { counter: Counter::new(radices), labels })
}

/// All rooted binary trees on `labels`, lazily. Needs at least one label.
pub fn rooted_binary(labels: &BTreeSet<Label>) -> Result<RootedEnumerator, Error> {
    if labels.is_empty() {
        return Err(Error::TooFewLabels { need: 1, got: 0 });
    }
    let labels: Vec<Label> = labels.iter().copied().collect();
    let radices: Vec<usize> = (0..labels.len() - 1).map(|i| 2 * i + 1).collect();
    Ok(RootedEnumerator { counter: Counter::new(radices), labels })
}

/// The tree the enumerator would yield at `index`, without iterating.
pub fn unrooted_tree_at(labels: &BTreeSet<Label>, index: u64) -> Result<Option<UnrootedTree>, Error> {
    let e = unrooted_binary(labels)?;
    Ok(e.counter.digits_at(index).map(|d| build_unrooted(&e.labels, &d)))
}

/// The tree the enumerator would yield at `index`, without iterating.
pub fn rooted_tree_at(labels: &BTreeSet<Label>, index: u64) -> Result<Option<RootedTree>, Error> {
    let e = rooted_binary(labels)?;
    Ok(e.counter.digits_at(index).map(|d| build_rooted(&e.labels, &d)))
}

/// Mixed-radix odometer; the last digit moves fastest.
struct Counter {
    radices: Vec<usize>,
    digits: Vec<usize>,
    exhausted: bool,
    started: bool,
}

impl Counter {
    fn new(radices: Vec<usize>) -> Self {
        let digits = vec![0; radices.len()];
        Counter { radices, digits, exhausted: false, started: false }
    }

    /// Advances to the next digit string, or reports exhaustion.
    fn step(&mut self) -> Option<&[usize]> {
        if self.exhausted {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.digits);
        }
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.radices[i] {
                return Some(&self.digits);
            }
            self.digits[i] = 0;
        }
        self.exhausted = true;
        None
    }

    fn digits_at(&self, mut index: u64) -> Option<Vec<usize>> {
        let mut digits = vec![0; self.radices.len()];
        for i in (0..self.radices.len()).rev() {
            let r = self.radices[i] as u64;
            digits[i] = (index % r) as usize;
            index /= r;
        }
        (index == 0).then_some(digits)
    }
}

pub struct UnrootedEnumerator {
    labels: Vec<Label>,
    counter: Counter,
}

impl Iterator for UnrootedEnumerator {
    type Item = UnrootedTree;

    fn next(&mut self) -> Option<UnrootedTree> {
        let labels = std::mem::take(&mut self.labels);
        let out = self.counter.step().map(|d| build_unrooted(&labels, d));
        self.labels = labels;
        out
    }
}

pub struct RootedEnumerator {
    labels: Vec<Label>,
    counter: Counter,
}

impl Iterator for RootedEnumerator {
    type Item = RootedTree;

    fn next(&mut self) -> Option<RootedTree> {
        let labels = std::mem::take(&mut self.labels);
        let out = self.counter.step().map(|d| build_rooted(&labels, d));
        self.labels = labels;
        out
    }
}

fn build_unrooted(labels: &[Label], digits: &[usize]) -> UnrootedTree {
    if labels.len() == 2 {
        return UnrootedTree::from_edges(2, &[(0, 1)], &[(0, labels[0]), (1, labels[1])])
            .expect("two-leaf tree is valid");
    }
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (0, 2), (0, 3)];
    let mut leaves: Vec<(usize, Label)> =
        vec![(1, labels[0]), (2, labels[1]), (3, labels[2])];
    let mut next = 4;
    for (idx, &d) in digits.iter().enumerate() {
        let (u, v) = edges[d];
        let (w, x) = (next, next + 1);
        next += 2;
        edges[d] = (u, w);
        edges.push((w, v));
        edges.push((w, x));
        leaves.push((x, labels[idx + 3]));
    }
    UnrootedTree::from_edges(next, &edges, &leaves).expect("leaf insertion yields a valid tree")
}

fn build_rooted(labels: &[Label], digits: &[usize]) -> RootedTree {
    if labels.len() == 1 {
        return RootedTree::leaf(labels[0]);
    }
    // Edges as (parent, child); digit k subdivides edge k, digit == #edges
    // grafts above the root.
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(2 * labels.len() - 2);
    let mut leaves: Vec<(usize, Label)> = vec![(0, labels[0])];
    let mut root = 0usize;
    let mut next = 1;
    for (idx, &d) in digits.iter().enumerate() {
        let (x, w) = (next, next + 1);
        next += 2;
        leaves.push((x, labels[idx + 1]));
        if d < edges.len() {
            let (u, v) = edges[d];
            edges[d] = (u, w);
            edges.push((w, v));
            edges.push((w, x));
        } else {
            edges.push((w, root));
            edges.push((w, x));
            root = w;
        }
    }
    let mut children = vec![Vec::new(); next];
    for &(p, c) in &edges {
        children[p].push(c);
    }
    RootedTree::from_children(root, children, &leaves)
        .expect("leaf insertion yields a valid tree")
}
