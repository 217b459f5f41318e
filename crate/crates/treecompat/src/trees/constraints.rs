//! The three constraint kinds a tree can display: quartets, triplets, and
//! multi-state characters. All are stored in a canonical form so that
//! structural equality, ordering, and set membership behave as set semantics.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::label::Label;

/// Unrooted constraint `ab|cd`: the path between `a` and `b` must avoid the
/// path between `c` and `d`.
///
/// Canonical form: each pair sorted, pairs ordered by their smaller element,
/// so `new(d, c, b, a)` equals `new(a, b, c, d)`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Quartet {
    pairs: [[Label; 2]; 2],
}

impl Quartet {
    pub fn new(a: Label, b: Label, c: Label, d: Label) -> Result<Self, Error> {
        let mut all = [a, b, c, d];
        all.sort();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedLabel);
        }
        let mut p = [min_max(a, b), min_max(c, d)];
        p.sort();
        Ok(Quartet { pairs: p })
    }

    pub fn pairs(&self) -> [[Label; 2]; 2] {
        self.pairs
    }

    /// The four labels, first pair then second.
    pub fn labels(&self) -> [Label; 4] {
        let [[a, b], [c, d]] = self.pairs;
        [a, b, c, d]
    }

    pub fn contains(&self, l: Label) -> bool {
        self.labels().contains(&l)
    }

    /// Index (0 or 1) of the pair holding `l`.
    pub fn side_of(&self, l: Label) -> Option<usize> {
        self.pairs.iter().position(|p| p.contains(&l))
    }
}

/// Rooted constraint `ab|c`: the last common ancestor of `a` and `b` must be
/// a strict descendant of the last common ancestor of all three.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Triplet {
    cherry: [Label; 2],
    outgroup: Label,
}

impl Triplet {
    pub fn new(a: Label, b: Label, c: Label) -> Result<Self, Error> {
        if a == b || a == c || b == c {
            return Err(Error::RepeatedLabel);
        }
        Ok(Triplet { cherry: min_max(a, b), outgroup: c })
    }

    pub fn cherry(&self) -> [Label; 2] {
        self.cherry
    }

    pub fn outgroup(&self) -> Label {
        self.outgroup
    }

    /// The three labels, cherry first.
    pub fn labels(&self) -> [Label; 3] {
        [self.cherry[0], self.cherry[1], self.outgroup]
    }

    pub fn contains(&self, l: Label) -> bool {
        self.labels().contains(&l)
    }
}

/// Partition of a label set; each part is one state.
///
/// Parts are stored sorted by their minimum element, so two characters over
/// the same partition compare equal regardless of construction order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Character {
    parts: Vec<BTreeSet<Label>>,
}

impl Character {
    pub fn new(parts: impl IntoIterator<Item = BTreeSet<Label>>) -> Result<Self, Error> {
        let mut parts: Vec<BTreeSet<Label>> = parts.into_iter().collect();
        if parts.is_empty() || parts.iter().any(BTreeSet::is_empty) {
            return Err(Error::NotAPartition);
        }
        let total: usize = parts.iter().map(BTreeSet::len).sum();
        let union: BTreeSet<Label> = parts.iter().flatten().copied().collect();
        if union.len() != total {
            return Err(Error::NotAPartition);
        }
        parts.sort();
        Ok(Character { parts })
    }

    pub fn parts(&self) -> &[BTreeSet<Label>] {
        &self.parts
    }

    pub fn num_states(&self) -> usize {
        self.parts.len()
    }

    /// Union of all parts.
    pub fn labels(&self) -> BTreeSet<Label> {
        self.parts.iter().flatten().copied().collect()
    }

    pub fn state_of(&self, l: Label) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(&l))
    }
}

fn min_max(a: Label, b: Label) -> [Label; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}
