//! Rooted triplet compatibility.
//!
//! For a label subset `S`, the cluster graph on `S` joins two labels
//! whenever they form the cherry of a triplet lying fully inside `S`. A
//! triplet set is compatible exactly when that graph is disconnected for
//! every `S` with three or more labels. The recursive checker uses the same
//! fact top-down: split the current label set into the graph's components,
//! recurse, and join the finished subtrees under a fresh root.

use std::collections::{BTreeMap, BTreeSet};

use crate::report::{CompatReport, MinimalityReport, Verdict};
use crate::trees::{rooted_binary, Quartet, RootedTree, Triplet};
use crate::{Error, Label};

/// Report for a triplet compatibility query.
pub type TripletReport = CompatReport<Triplet, RootedTree>;

/// Default cap on universe size for the rooted brute oracle.
pub const DEFAULT_BRUTE_CAP: usize = 7;

/// Default cap on universe size for the exhaustive subset sweep.
pub const DEFAULT_SWEEP_CAP: usize = 12;

/// Union of all labels mentioned by `rs`.
pub fn label_union<'a>(rs: impl IntoIterator<Item = &'a Triplet>) -> BTreeSet<Label> {
    rs.into_iter().flat_map(|t| t.labels()).collect()
}

pub(crate) fn check_input(rs: &[Triplet]) -> Result<(), Error> {
    if rs.is_empty() {
        return Err(Error::EmptyInput);
    }
    for (i, t) in rs.iter().enumerate() {
        if rs[..i].contains(t) {
            return Err(Error::DuplicateConstraint(i));
        }
    }
    Ok(())
}

/// The graph on a label subset whose edges join the cherries of triplets
/// lying fully inside the subset. Connectivity decides compatibility.
#[derive(Clone, Debug)]
pub struct ClusterGraph {
    vertices: BTreeSet<Label>,
    /// Cherry pair mapped to the indices of the triplets contributing it.
    edges: BTreeMap<[Label; 2], Vec<usize>>,
}

/// Builds the cluster graph of `rs` on the subset `s`. Triplets with any
/// label outside `s` contribute nothing.
pub fn cluster_graph(rs: &[Triplet], s: &BTreeSet<Label>) -> ClusterGraph {
    let mut edges: BTreeMap<[Label; 2], Vec<usize>> = BTreeMap::new();
    for (i, t) in rs.iter().enumerate() {
        if t.labels().iter().all(|l| s.contains(l)) {
            edges.entry(t.cherry()).or_default().push(i);
        }
    }
    ClusterGraph { vertices: s.clone(), edges }
}

impl ClusterGraph {
    pub fn vertices(&self) -> &BTreeSet<Label> {
        &self.vertices
    }

    /// Distinct edges in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = [Label; 2]> + '_ {
        self.edges.keys().copied()
    }

    /// How many triplets contribute `edge`.
    pub fn multiplicity(&self, edge: [Label; 2]) -> usize {
        self.edges.get(&edge).map_or(0, Vec::len)
    }

    /// Connected components, ordered by their minimum label.
    pub fn components(&self) -> Vec<BTreeSet<Label>> {
        let mut adj: BTreeMap<Label, Vec<Label>> = BTreeMap::new();
        for &[x, y] in self.edges.keys() {
            adj.entry(x).or_default().push(y);
            adj.entry(y).or_default().push(x);
        }
        let mut seen: BTreeSet<Label> = BTreeSet::new();
        let mut out = Vec::new();
        for &v in &self.vertices {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![v];
            seen.insert(v);
            while let Some(x) = stack.pop() {
                comp.insert(x);
                for &y in adj.get(&x).into_iter().flatten() {
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Edges whose removal would split their component, ignoring edge
    /// multiplicity.
    pub fn bridges(&self) -> BTreeSet<[Label; 2]> {
        let verts: Vec<Label> = self.vertices.iter().copied().collect();
        let index: BTreeMap<Label, usize> =
            verts.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
        for &[x, y] in self.edges.keys() {
            adj[index[&x]].push(index[&y]);
            adj[index[&y]].push(index[&x]);
        }
        let mut disc: Vec<Option<usize>> = vec![None; verts.len()];
        let mut low = vec![0usize; verts.len()];
        let mut time = 0usize;
        let mut found: Vec<(usize, usize)> = Vec::new();
        for v in 0..verts.len() {
            if disc[v].is_none() {
                bridge_dfs(v, None, &adj, &mut disc, &mut low, &mut time, &mut found);
            }
        }
        found
            .into_iter()
            .map(|(x, y)| {
                let (a, b) = (verts[x], verts[y]);
                if a <= b {
                    [a, b]
                } else {
                    [b, a]
                }
            })
            .collect()
    }
}

fn bridge_dfs(
    v: usize,
    parent: Option<usize>,
    adj: &[Vec<usize>],
    disc: &mut Vec<Option<usize>>,
    low: &mut Vec<usize>,
    time: &mut usize,
    found: &mut Vec<(usize, usize)>,
) {
    disc[v] = Some(*time);
    low[v] = *time;
    *time += 1;
    let mut skipped_parent = false;
    for &w in &adj[v] {
        if Some(w) == parent && !skipped_parent {
            skipped_parent = true;
            continue;
        }
        match disc[w] {
            Some(d) => low[v] = low[v].min(d),
            None => {
                bridge_dfs(w, Some(v), adj, disc, low, time, found);
                low[v] = low[v].min(low[w]);
                if low[w] > disc[v].unwrap() {
                    found.push((v, w));
                }
            }
        }
    }
}

/// Polynomial decision procedure. Splits the label set into the cluster
/// graph's components and recurses; a connected graph on three or more
/// labels means no tree exists. Compatible inputs get a rooted witness
/// whose children follow component order, so reruns agree byte-for-byte.
pub fn build_compat(rs: &[Triplet]) -> Result<TripletReport, Error> {
    check_input(rs)?;
    let labels = label_union(rs);
    let mut children: Vec<Vec<usize>> = Vec::new();
    let mut leaves: Vec<(usize, Label)> = Vec::new();
    match build(&labels, rs, &mut children, &mut leaves) {
        Some(root) => {
            let tree = RootedTree::from_children(root, children, &leaves)?;
            Ok(TripletReport::compatible(Some(tree)))
        }
        None => Ok(TripletReport::incompatible(None)),
    }
}

/// Adds a subtree covering `s` to the accumulators and returns its root, or
/// `None` when some recursive subset has a connected cluster graph.
fn build(
    s: &BTreeSet<Label>,
    rs: &[Triplet],
    children: &mut Vec<Vec<usize>>,
    leaves: &mut Vec<(usize, Label)>,
) -> Option<usize> {
    if s.len() == 1 {
        let v = children.len();
        children.push(Vec::new());
        leaves.push((v, *s.iter().next().unwrap()));
        return Some(v);
    }
    let parts: Vec<BTreeSet<Label>> = if s.len() == 2 {
        s.iter().map(|&l| BTreeSet::from([l])).collect()
    } else {
        let parts = cluster_graph(rs, s).components();
        if parts.len() <= 1 {
            return None;
        }
        parts
    };
    let mut kids = Vec::new();
    for part in &parts {
        kids.push(build(part, rs, children, leaves)?);
    }
    let v = children.len();
    children.push(kids);
    Some(v)
}

/// Exhaustive cross-check of the connectivity criterion: compatible exactly
/// when every subset of three or more labels has a disconnected cluster
/// graph. Exponential in the universe, hence the cap.
pub fn compat_subset_sweep(rs: &[Triplet], max_labels: usize) -> Result<Verdict, Error> {
    check_input(rs)?;
    let labels: Vec<Label> = label_union(rs).into_iter().collect();
    if labels.len() > max_labels {
        return Err(Error::LabelCapExceeded { got: labels.len(), cap: max_labels });
    }
    for mask in 0u32..(1u32 << labels.len()) {
        if mask.count_ones() < 3 {
            continue;
        }
        let s: BTreeSet<Label> = labels
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &l)| l)
            .collect();
        if cluster_graph(rs, &s).is_connected() {
            return Ok(Verdict::Incompatible);
        }
    }
    Ok(Verdict::Compatible)
}

/// Exhaustive oracle: scans every rooted binary tree on the label union
/// for one displaying all of `rs`.
pub fn compat_brute(rs: &[Triplet], max_labels: usize) -> Result<TripletReport, Error> {
    check_input(rs)?;
    let labels = label_union(rs);
    if labels.len() > max_labels {
        return Err(Error::LabelCapExceeded { got: labels.len(), cap: max_labels });
    }
    for tree in rooted_binary(&labels)? {
        if tree.displays_all_triplets(rs)? {
            return Ok(TripletReport::compatible(Some(tree)));
        }
    }
    Ok(TripletReport::incompatible(None))
}

/// Greedily shrinks an incompatible set to a minimal incompatible subset:
/// the result is incompatible while every proper subset of it is
/// compatible. Candidates whose cherry edge lies on a cycle of the full
/// cluster graph are tried first (parallel edges count as cycles), ties in
/// canonical triplet order; survivors keep their input order.
pub fn extract_incompatible_subset(rs: &[Triplet]) -> Result<Vec<Triplet>, Error> {
    if build_compat(rs)?.verdict.is_compatible() {
        return Err(Error::AlreadyCompatible);
    }
    let mut current = rs.to_vec();
    'shrink: loop {
        for idx in candidate_order(&current) {
            if current.len() == 1 {
                break;
            }
            let mut rest = current.clone();
            rest.remove(idx);
            if !build_compat(&rest)?.verdict.is_compatible() {
                current = rest;
                continue 'shrink;
            }
        }
        return Ok(current);
    }
}

fn candidate_order(rs: &[Triplet]) -> Vec<usize> {
    let g = cluster_graph(rs, &label_union(rs));
    let bridges = g.bridges();
    let on_cycle =
        |t: &Triplet| g.multiplicity(t.cherry()) >= 2 || !bridges.contains(&t.cherry());
    let mut idx: Vec<usize> = (0..rs.len()).collect();
    idx.sort_by_key(|&i| (!on_cycle(&rs[i]), rs[i]));
    idx
}

/// Tests whether `rs` is incompatible with every single removal restoring
/// compatibility. Uses the polynomial checker, so there is no size cap.
pub fn minimality(rs: &[Triplet]) -> Result<MinimalityReport<Triplet>, Error> {
    if build_compat(rs)?.verdict.is_compatible() {
        return Ok(MinimalityReport { incompatible: false, minimal: false, redundant: None });
    }
    for drop in 0..rs.len() {
        let rest: Vec<Triplet> = rs
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != drop)
            .map(|(_, t)| *t)
            .collect();
        if rest.is_empty() {
            continue;
        }
        if !build_compat(&rest)?.verdict.is_compatible() {
            return Ok(MinimalityReport {
                incompatible: true,
                minimal: false,
                redundant: Some(rs[drop]),
            });
        }
    }
    Ok(MinimalityReport { incompatible: true, minimal: true, redundant: None })
}

/// Rewrites quartets that all contain `shared` into triplets by dropping
/// it: `ab|c shared` becomes `ab|c`. Compatibility is preserved in both
/// directions.
pub fn triplets_of_quartets(qs: &[Quartet], shared: Label) -> Result<Vec<Triplet>, Error> {
    crate::quartets::check_input(qs)?;
    qs.iter()
        .map(|q| {
            let side = q.side_of(shared).ok_or(Error::SharedLabelMissing)?;
            let cherry = q.pairs()[1 - side];
            let partner =
                q.pairs()[side].iter().copied().find(|&l| l != shared).expect("distinct labels");
            Triplet::new(cherry[0], cherry[1], partner)
        })
        .collect()
}

/// Inverse rewriting: `ab|c` becomes `ab|c fresh` for a label outside the
/// triplet universe.
pub fn quartets_of_triplets(rs: &[Triplet], fresh: Label) -> Result<Vec<Quartet>, Error> {
    check_input(rs)?;
    if label_union(rs).contains(&fresh) {
        return Err(Error::LabelNotFresh);
    }
    rs.iter()
        .map(|t| Quartet::new(t.cherry()[0], t.cherry()[1], t.outgroup(), fresh))
        .collect()
}
