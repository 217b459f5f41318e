//! Leaf labels and the universe that interns them.
//!
//! All structural types (trees, quartets, characters, triplets) store dense
//! integer [`Label`] handles. A [`LabelUniverse`] owns the name strings and
//! the name-to-handle bijection; anything printed for humans goes through it.
//! Two labels are only comparable when they come from the same universe.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;

/// Dense handle for a leaf name inside one [`LabelUniverse`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub u32);

impl Label {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.0)
    }
}

/// Characters that would collide with the Newick and line formats.
const FORBIDDEN: &[char] =
    &['(', ')', '{', '}', '[', ']', ',', ';', ':', '|', '#', '\'', '"'];

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| FORBIDDEN.contains(&c) || c.is_whitespace())
}

/// Bijective name <-> handle table for one analysis context.
#[derive(Clone, Default, Debug)]
pub struct LabelUniverse {
    names: Vec<String>,
    index: BTreeMap<String, Label>,
}

impl LabelUniverse {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the handle for `name`, interning it on first sight.
    pub fn intern(&mut self, name: &str) -> Result<Label, Error> {
        if let Some(&l) = self.index.get(name) {
            return Ok(l);
        }
        if !valid_name(name) {
            return Err(Error::InvalidLabelName(name.to_string()));
        }
        let l = Label(
            u32::try_from(self.names.len()).expect("label universes stay far below u32::MAX"),
        );
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), l);
        Ok(l)
    }

    /// Handle for an already interned name.
    pub fn get(&self, name: &str) -> Option<Label> {
        self.index.get(name).copied()
    }

    pub fn name(&self, l: Label) -> &str {
        &self.names[l.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn contains(&self, l: Label) -> bool {
        l.index() < self.names.len()
    }

    /// All handles in interning order.
    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        (0..self.names.len()).map(|i| Label(i as u32))
    }
}
