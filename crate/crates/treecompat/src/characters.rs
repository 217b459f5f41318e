//! Multi-state character compatibility and the quartet correspondence.
//!
//! A character is convex on a tree when the minimal subtrees spanned by its
//! parts are pairwise vertex-disjoint; a set of characters is compatible
//! when a single tree makes every member convex. Each quartet `ab|cd` over
//! a universe `L` induces the character whose only non-singleton parts are
//! `{a, b}` and `{c, d}`: a tree on `L` displays the quartet exactly when
//! the induced character is convex on it, so the two compatibility
//! questions translate into each other.

use std::collections::BTreeSet;

use crate::report::{CompatReport, MinimalityReport};
use crate::trees::{unrooted_binary, Character, Quartet, UnrootedTree};
use crate::{Error, Label};

/// Report for a character compatibility query.
pub type CharacterReport = CompatReport<Character, UnrootedTree>;

/// The character over `universe` induced by `q`: each side of `q` is a
/// part, every other label of `universe` a singleton part.
pub fn character_of_quartet(
    q: &Quartet,
    universe: &BTreeSet<Label>,
) -> Result<Character, Error> {
    if q.labels().iter().any(|l| !universe.contains(l)) {
        return Err(Error::UnknownLabel);
    }
    let mut parts: Vec<BTreeSet<Label>> =
        q.pairs().iter().map(|p| p.iter().copied().collect()).collect();
    parts.extend(
        universe.iter().filter(|l| q.side_of(**l).is_none()).map(|&l| BTreeSet::from([l])),
    );
    Character::new(parts)
}

/// One character per quartet, all over the union of the quartets' labels.
///
/// Distinct quartets induce distinct characters, so the output has the same
/// length as the input.
pub fn characters_of_quartets(qs: &[Quartet]) -> Result<Vec<Character>, Error> {
    crate::quartets::check_input(qs)?;
    let universe = crate::quartets::label_union(qs);
    qs.iter().map(|q| character_of_quartet(q, &universe)).collect()
}

/// All characters must partition one shared universe; returns it.
fn check_input(chars: &[Character]) -> Result<BTreeSet<Label>, Error> {
    if chars.is_empty() {
        return Err(Error::EmptyInput);
    }
    for (i, c) in chars.iter().enumerate() {
        if chars[..i].contains(c) {
            return Err(Error::DuplicateConstraint(i));
        }
    }
    let universe = chars[0].labels();
    if chars[1..].iter().any(|c| c.labels() != universe) {
        return Err(Error::MismatchedUniverses);
    }
    Ok(universe)
}

/// Exhaustive oracle: scans every unrooted binary tree on the shared
/// universe for one on which all of `chars` are convex.
///
/// Binary trees suffice: convexity survives refinement, so any witness can
/// be replaced by a binary one.
pub fn compat_brute(chars: &[Character], max_labels: usize) -> Result<CharacterReport, Error> {
    let universe = check_input(chars)?;
    if universe.len() > max_labels {
        return Err(Error::LabelCapExceeded { got: universe.len(), cap: max_labels });
    }
    if universe.len() < 2 {
        return Ok(CharacterReport::compatible(None));
    }
    for tree in unrooted_binary(&universe)? {
        if tree.is_convex_all(chars)? {
            return Ok(CharacterReport::compatible(Some(tree)));
        }
    }
    Ok(CharacterReport::incompatible(None))
}

/// Tests whether `chars` is incompatible and stays compatible after every
/// single removal. Singleton inputs are never incompatible.
pub fn minimality(
    chars: &[Character],
    max_labels: usize,
) -> Result<MinimalityReport<Character>, Error> {
    let full = compat_brute(chars, max_labels)?;
    if full.verdict.is_compatible() {
        return Ok(MinimalityReport { incompatible: false, minimal: false, redundant: None });
    }
    for drop in 0..chars.len() {
        let rest: Vec<Character> = chars
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != drop)
            .map(|(_, c)| c.clone())
            .collect();
        if rest.is_empty() {
            continue;
        }
        if !compat_brute(&rest, max_labels)?.verdict.is_compatible() {
            return Ok(MinimalityReport {
                incompatible: true,
                minimal: false,
                redundant: Some(chars[drop].clone()),
            });
        }
    }
    Ok(MinimalityReport { incompatible: true, minimal: true, redundant: None })
}

/// Largest part-count over the set.
pub fn max_states(chars: &[Character]) -> usize {
    chars.iter().map(Character::num_states).max().unwrap_or(0)
}
