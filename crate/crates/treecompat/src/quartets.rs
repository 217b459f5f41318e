//! Quartet compatibility: exhaustive tree search and the quartet-graph
//! unification test.
//!
//! The quartet graph has one vertex per label and, for each quartet `ab|cd`,
//! two same-colored edges `ab` and `cd`. Unifying an admissible vertex set
//! (no color with two incident edges) merges it into one class, re-attaches
//! edges that cross the boundary, and deletes every edge of any color with
//! an edge inside the merged set. A quartet set is compatible exactly when
//! some sequence of unifications erases all edges; [`find_complete_unification`]
//! searches for one.
//!
//! [`find_complete_unification`]: QuartetGraph::find_complete_unification

use std::collections::{BTreeMap, BTreeSet, HashSet};

use itertools::Itertools;

use crate::error::Error;
use crate::label::Label;
use crate::report::{CompatReport, MinimalityReport};
use crate::trees::{unrooted_binary, Quartet, UnrootedTree};

/// Verdict with an optional witness tree or incompatible sub-multiset.
pub type QuartetReport = CompatReport<Quartet, UnrootedTree>;

/// Labels allowed in the exhaustive search unless the caller raises it.
pub const DEFAULT_BRUTE_CAP: usize = 9;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Method {
    Brute,
    Unification,
}

/// Union of the quartets' label sets.
pub fn label_union<'a>(qs: impl IntoIterator<Item = &'a Quartet>) -> BTreeSet<Label> {
    qs.into_iter().flat_map(|q| q.labels()).collect()
}

pub(crate) fn check_input(qs: &[Quartet]) -> Result<(), Error> {
    if qs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut seen = BTreeSet::new();
    for (i, q) in qs.iter().enumerate() {
        if !seen.insert(*q) {
            return Err(Error::DuplicateConstraint(i));
        }
    }
    Ok(())
}

/// Scans every unrooted binary tree on the label union and returns the first
/// one displaying all quartets, or incompatible if none does.
pub fn compat_brute(qs: &[Quartet], max_labels: usize) -> Result<QuartetReport, Error> {
    check_input(qs)?;
    let labels = label_union(qs);
    if labels.len() > max_labels {
        return Err(Error::LabelCapExceeded { got: labels.len(), cap: max_labels });
    }
    for t in unrooted_binary(&labels)? {
        if t.displays_all_quartets(qs)? {
            return Ok(QuartetReport::compatible(Some(t)));
        }
    }
    Ok(QuartetReport::incompatible(None))
}

/// Decides compatibility by quartet-graph unification. Produces no witness.
pub fn compat_unification(qs: &[Quartet]) -> Result<QuartetReport, Error> {
    check_input(qs)?;
    let g = QuartetGraph::new(qs)?;
    Ok(match g.find_complete_unification() {
        Some(_) => QuartetReport::compatible(None),
        None => QuartetReport::incompatible(None),
    })
}

pub fn compat(qs: &[Quartet], method: Method, max_labels: usize) -> Result<QuartetReport, Error> {
    match method {
        Method::Brute => compat_brute(qs, max_labels),
        Method::Unification => compat_unification(qs),
    }
}

/// Exhaustively certifies that `qs` is incompatible while every single-drop
/// subset is compatible.
pub fn minimality(qs: &[Quartet], max_labels: usize) -> Result<MinimalityReport<Quartet>, Error> {
    if compat_brute(qs, max_labels)?.verdict.is_compatible() {
        return Ok(MinimalityReport { incompatible: false, minimal: false, redundant: None });
    }
    for drop in 0..qs.len() {
        let rest: Vec<Quartet> =
            qs.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, q)| *q).collect();
        if rest.is_empty() {
            continue;
        }
        if !compat_brute(&rest, max_labels)?.verdict.is_compatible() {
            return Ok(MinimalityReport {
                incompatible: true,
                minimal: false,
                redundant: Some(qs[drop]),
            });
        }
    }
    Ok(MinimalityReport { incompatible: true, minimal: true, redundant: None })
}

/// Handle for a vertex of the quartet graph. Classes keep their ids across
/// unifications; each unification mints a fresh one.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ClassId(pub usize);

type Edge = (ClassId, ClassId);

fn edge(a: ClassId, b: ClassId) -> Edge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Quartet over graph classes rather than labels, canonicalized like
/// [`Quartet`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ClassQuartet {
    pub pairs: [Edge; 2],
}

impl ClassQuartet {
    fn new(e1: Edge, e2: Edge) -> Self {
        let mut pairs = [e1, e2];
        pairs.sort();
        ClassQuartet { pairs }
    }
}

/// One unification: the classes merged and the class that replaced them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnificationStep {
    pub unified: BTreeSet<ClassId>,
    pub new_class: ClassId,
}

#[derive(Clone, Debug)]
pub struct QuartetGraph {
    classes: BTreeMap<ClassId, BTreeSet<Label>>,
    /// Indexed by color; `None` once the color's edges are deleted.
    colors: Vec<Option<[Edge; 2]>>,
    source: Vec<Quartet>,
    next_class: usize,
}

impl QuartetGraph {
    /// The initial graph: singleton classes, two edges per quartet.
    pub fn new(qs: &[Quartet]) -> Result<Self, Error> {
        check_input(qs)?;
        let labels = label_union(qs);
        let class_of: BTreeMap<Label, ClassId> =
            labels.iter().enumerate().map(|(i, &l)| (l, ClassId(i))).collect();
        let classes: BTreeMap<ClassId, BTreeSet<Label>> =
            labels.iter().enumerate().map(|(i, &l)| (ClassId(i), BTreeSet::from([l]))).collect();
        let colors = qs
            .iter()
            .map(|q| {
                let [[a, b], [c, d]] = q.pairs();
                Some([edge(class_of[&a], class_of[&b]), edge(class_of[&c], class_of[&d])])
            })
            .collect();
        Ok(QuartetGraph { classes, colors, source: qs.to_vec(), next_class: labels.len() })
    }

    pub fn class_ids(&self) -> impl Iterator<Item = ClassId> + '_ {
        self.classes.keys().copied()
    }

    pub fn class_labels(&self, c: ClassId) -> Option<&BTreeSet<Label>> {
        self.classes.get(&c)
    }

    /// Colors that still have edges, with their source quartet.
    pub fn live_colors(&self) -> impl Iterator<Item = (Quartet, [Edge; 2])> + '_ {
        self.colors
            .iter()
            .zip(&self.source)
            .filter_map(|(c, q)| c.map(|edges| (*q, edges)))
    }

    pub fn is_edgeless(&self) -> bool {
        self.colors.iter().all(Option::is_none)
    }

    pub fn edge_count(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count() * 2
    }

    fn check_subset(&self, u: &BTreeSet<ClassId>) -> Result<(), Error> {
        if u.len() < 2 {
            return Err(Error::UnificationTooSmall);
        }
        if u.iter().any(|c| !self.classes.contains_key(c)) {
            return Err(Error::UnknownClass);
        }
        Ok(())
    }

    /// True when no color has two of its edges incident on `u` (an edge with
    /// both endpoints inside counts once).
    pub fn admissible(&self, u: &BTreeSet<ClassId>) -> Result<bool, Error> {
        self.check_subset(u)?;
        Ok(self.colors.iter().flatten().all(|edges| {
            edges.iter().filter(|(x, y)| u.contains(x) || u.contains(y)).count() <= 1
        }))
    }

    /// Merges the classes of `u` into a fresh class, re-attaching boundary
    /// edges and deleting every color with an edge fully inside `u`.
    pub fn unify(&self, u: &BTreeSet<ClassId>) -> Result<(QuartetGraph, ClassId), Error> {
        if !self.admissible(u)? {
            return Err(Error::Inadmissible);
        }
        let mut g = self.clone();
        let merged = ClassId(g.next_class);
        g.next_class += 1;
        let labels = u.iter().flat_map(|c| self.classes[c].iter().copied()).collect();
        for c in u {
            g.classes.remove(c);
        }
        g.classes.insert(merged, labels);
        for slot in g.colors.iter_mut() {
            let Some(edges) = slot else { continue };
            if edges.iter().any(|(x, y)| u.contains(x) && u.contains(y)) {
                *slot = None;
                continue;
            }
            for e in edges.iter_mut() {
                let (x, y) = *e;
                if u.contains(&x) {
                    *e = edge(merged, y);
                } else if u.contains(&y) {
                    *e = edge(x, merged);
                }
            }
        }
        Ok((g, merged))
    }

    /// The quartets the current graph encodes, over class handles, deduped
    /// and sorted.
    pub fn quartet_set(&self) -> Vec<ClassQuartet> {
        let set: BTreeSet<ClassQuartet> =
            self.live_colors().map(|(_, [e1, e2])| ClassQuartet::new(e1, e2)).collect();
        set.into_iter().collect()
    }

    /// Label-level quartets, available while all classes incident to edges
    /// are singletons (in particular for the initial graph).
    pub fn quartet_set_as_labels(&self) -> Option<Vec<Quartet>> {
        let single = |c: ClassId| -> Option<Label> {
            let ls = self.classes.get(&c)?;
            (ls.len() == 1).then(|| *ls.iter().next().expect("nonempty"))
        };
        let set: BTreeSet<Quartet> = self
            .quartet_set()
            .into_iter()
            .map(|cq| {
                let [(a, b), (c, d)] = cq.pairs;
                Quartet::new(single(a)?, single(b)?, single(c)?, single(d)?).ok()
            })
            .collect::<Option<_>>()?;
        Some(set.into_iter().collect())
    }

    /// Searches for a complete unification sequence: subsets of classes that
    /// touch an edge, smallest first, depth first, with failed states
    /// memoized. Isolated classes never need to be merged, because merging
    /// them only renames vertices in the colored-edge structure.
    pub fn find_complete_unification(&self) -> Option<Vec<UnificationStep>> {
        let mut failed: HashSet<Vec<[(Vec<u32>, Vec<u32>); 2]>> = HashSet::new();
        self.search(&mut failed)
    }

    fn search(
        &self,
        failed: &mut HashSet<Vec<[(Vec<u32>, Vec<u32>); 2]>>,
    ) -> Option<Vec<UnificationStep>> {
        if self.is_edgeless() {
            return Some(Vec::new());
        }
        let key = self.state_key();
        if failed.contains(&key) {
            return None;
        }
        let mut active: BTreeSet<ClassId> = BTreeSet::new();
        for edges in self.colors.iter().flatten() {
            for &(x, y) in edges {
                active.insert(x);
                active.insert(y);
            }
        }
        let active: Vec<ClassId> = active.into_iter().collect();
        for size in 2..=active.len() {
            for combo in active.iter().combinations(size) {
                let u: BTreeSet<ClassId> = combo.into_iter().copied().collect();
                if !self.admissible(&u).expect("active classes are live") {
                    continue;
                }
                let (g, merged) = self.unify(&u).expect("just checked admissibility");
                if let Some(mut rest) = g.search(failed) {
                    rest.insert(0, UnificationStep { unified: u, new_class: merged });
                    return Some(rest);
                }
            }
        }
        failed.insert(key);
        None
    }

    /// Colored-edge structure with classes named by their label sets and
    /// color identities forgotten.
    fn state_key(&self) -> Vec<[(Vec<u32>, Vec<u32>); 2]> {
        let name = |c: ClassId| -> Vec<u32> { self.classes[&c].iter().map(|l| l.0).collect() };
        let mut key: Vec<[(Vec<u32>, Vec<u32>); 2]> = self
            .colors
            .iter()
            .flatten()
            .map(|&[e1, e2]| {
                let mut pair = [(name(e1.0), name(e1.1)), (name(e2.0), name(e2.1))];
                pair.sort();
                pair
            })
            .collect();
        key.sort();
        key
    }

    /// Replays `steps` from this graph, failing if any step is inadmissible
    /// or names a missing class. Returns the final graph.
    pub fn replay(&self, steps: &[UnificationStep]) -> Result<QuartetGraph, Error> {
        let mut g = self.clone();
        for step in steps {
            let (next, merged) = g.unify(&step.unified)?;
            if merged != step.new_class {
                return Err(Error::UnknownClass);
            }
            g = next;
        }
        Ok(g)
    }
}
