//! Leaf-labeled trees and the display relation.
//!
//! [`UnrootedTree`] has no degree-2 vertices; [`RootedTree`] allows degree 2
//! at the root only. In both, leaves and labels are in bijection. Restriction
//! keeps the minimal connecting subtree of the chosen labels and suppresses
//! the vertices that drop to degree 2, so the result satisfies the same
//! invariants.

mod canonical;
mod constraints;
mod enumerate;
mod newick;

pub use constraints::{Character, Quartet, Triplet};
pub use enumerate::{
    rooted_binary, rooted_binary_count, rooted_tree_at, unrooted_binary, unrooted_binary_count,
    unrooted_tree_at, RootedEnumerator, UnrootedEnumerator,
};
pub use newick::parse_rooted;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Error;
use crate::label::{Label, LabelUniverse};

/// Unrooted tree: every leaf labeled, no degree-2 vertices.
#[derive(Clone, Debug)]
pub struct UnrootedTree {
    adj: Vec<Vec<usize>>,
    leaf_label: Vec<Option<Label>>,
    leaf_of: BTreeMap<Label, usize>,
}

impl UnrootedTree {
    /// Builds a tree from an explicit edge list. Vertices are `0..n`; every
    /// degree-1 vertex must appear in `leaves` and no vertex may have
    /// degree 2.
    pub fn from_edges(
        n: usize,
        edges: &[(usize, usize)],
        leaves: &[(usize, Label)],
    ) -> Result<Self, Error> {
        let adj = adjacency(n, edges)?;
        Self::from_adjacency(adj, leaf_vec(n, leaves)?)
    }

    /// Like [`UnrootedTree::from_edges`] but splices out unlabeled degree-2
    /// vertices and drops unlabeled isolated ones first. Restriction and the
    /// witness-tree generators produce such vertices as a side effect.
    pub fn from_edges_suppressing(
        n: usize,
        edges: &[(usize, usize)],
        leaves: &[(usize, Label)],
    ) -> Result<Self, Error> {
        let mut adj = adjacency(n, edges)?;
        let labels = leaf_vec(n, leaves)?;
        // Splicing never changes a neighbor's degree, so one pass suffices.
        for v in 0..n {
            if labels[v].is_none() && adj[v].len() == 2 {
                let (x, y) = (adj[v][0], adj[v][1]);
                adj[v].clear();
                replace_neighbor(&mut adj, x, v, y);
                replace_neighbor(&mut adj, y, v, x);
            }
        }
        let mut remap = vec![usize::MAX; n];
        let mut kept = 0usize;
        for v in 0..n {
            if !adj[v].is_empty() {
                remap[v] = kept;
                kept += 1;
            } else if labels[v].is_some() {
                return Err(Error::InvalidTree(format!("labeled vertex {v} is isolated")));
            }
        }
        let mut new_adj = vec![Vec::new(); kept];
        let mut new_labels = vec![None; kept];
        for v in 0..n {
            if remap[v] != usize::MAX {
                new_adj[remap[v]] = adj[v].iter().map(|&u| remap[u]).collect();
                new_labels[remap[v]] = labels[v];
            }
        }
        Self::from_adjacency(new_adj, new_labels)
    }

    fn from_adjacency(adj: Vec<Vec<usize>>, leaf_label: Vec<Option<Label>>) -> Result<Self, Error> {
        let n = adj.len();
        if n < 2 {
            return Err(Error::TooFewLabels { need: 2, got: n });
        }
        let degree_sum: usize = adj.iter().map(Vec::len).sum();
        if degree_sum != 2 * (n - 1) {
            return Err(Error::InvalidTree(format!("{} edges for {n} vertices", degree_sum / 2)));
        }
        let mut leaf_of = BTreeMap::new();
        for v in 0..n {
            match (adj[v].len(), leaf_label[v]) {
                (1, Some(l)) => {
                    if leaf_of.insert(l, v).is_some() {
                        return Err(Error::InvalidTree("repeated leaf label".into()));
                    }
                }
                (1, None) => return Err(Error::InvalidTree(format!("unlabeled leaf {v}"))),
                (2, _) => return Err(Error::InvalidTree(format!("degree-2 vertex {v}"))),
                (_, Some(_)) => {
                    return Err(Error::InvalidTree(format!("labeled internal vertex {v}")))
                }
                _ => {}
            }
        }
        check_connected_tree(&adj)?;
        Ok(UnrootedTree { adj, leaf_label, leaf_of })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_of.len()
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.leaf_of.keys().copied().collect()
    }

    pub fn contains_label(&self, l: Label) -> bool {
        self.leaf_of.contains_key(&l)
    }

    pub(crate) fn adjacency_ref(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub(crate) fn label_at(&self, v: usize) -> Option<Label> {
        self.leaf_label[v]
    }

    fn leaf(&self, l: Label) -> Result<usize, Error> {
        self.leaf_of.get(&l).copied().ok_or(Error::UnknownLabel)
    }

    fn bfs_parents(&self, start: usize) -> Vec<usize> {
        bfs_parents(&self.adj, start)
    }

    /// Restriction to `keep`: minimal connecting subtree with degree-2
    /// vertices suppressed.
    pub fn restrict(&self, keep: &BTreeSet<Label>) -> Result<UnrootedTree, Error> {
        if keep.len() < 2 {
            return Err(Error::TooFewLabels { need: 2, got: keep.len() });
        }
        let marked = self.steiner_set(keep)?;
        let mut edges = Vec::new();
        for v in 0..self.adj.len() {
            for &u in &self.adj[v] {
                if v < u && marked[v] && marked[u] {
                    edges.push((v, u));
                }
            }
        }
        let leaves: Vec<(usize, Label)> =
            keep.iter().map(|&l| (self.leaf_of[&l], l)).collect();
        UnrootedTree::from_edges_suppressing(self.adj.len(), &edges, &leaves)
    }

    /// Vertices of the minimal subtree connecting the leaves in `keep`.
    fn steiner_set(&self, keep: &BTreeSet<Label>) -> Result<Vec<bool>, Error> {
        let mut it = keep.iter();
        let anchor = self.leaf(*it.next().expect("caller checked keep is nonempty"))?;
        let parent = self.bfs_parents(anchor);
        let mut marked = vec![false; self.adj.len()];
        marked[anchor] = true;
        for &l in it {
            let mut v = self.leaf(l)?;
            while !marked[v] {
                marked[v] = true;
                v = parent[v];
            }
        }
        Ok(marked)
    }

    /// True when the `ab` and `cd` paths are vertex-disjoint, i.e. when the
    /// restriction to the four labels is the quartet's topology.
    pub fn displays_quartet(&self, q: &Quartet) -> Result<bool, Error> {
        let [[a, b], [c, d]] = q.pairs();
        let pab = self.path_vertices(a, b)?;
        let pcd = self.path_vertices(c, d)?;
        Ok(pab.iter().all(|v| !pcd.contains(v)))
    }

    pub fn displays_all_quartets<'a>(
        &self,
        qs: impl IntoIterator<Item = &'a Quartet>,
    ) -> Result<bool, Error> {
        for q in qs {
            if !self.displays_quartet(q)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn path_vertices(&self, a: Label, b: Label) -> Result<Vec<usize>, Error> {
        let va = self.leaf(a)?;
        let vb = self.leaf(b)?;
        let parent = self.bfs_parents(va);
        let mut path = vec![vb];
        let mut v = vb;
        while v != va {
            v = parent[v];
            path.push(v);
        }
        Ok(path)
    }

    /// Convexity: the minimal subtrees of the character's parts are pairwise
    /// vertex-disjoint. The character's labels must all be leaves of `self`.
    pub fn is_convex(&self, chi: &Character) -> Result<bool, Error> {
        let mut claimed: Vec<Option<usize>> = vec![None; self.adj.len()];
        for (pi, part) in chi.parts().iter().enumerate() {
            let mut it = part.iter();
            let anchor = self.leaf(*it.next().expect("parts are nonempty"))?;
            let parent = self.bfs_parents(anchor);
            for &l in part.iter() {
                let mut v = self.leaf(l)?;
                loop {
                    match claimed[v] {
                        Some(p) if p == pi => break,
                        Some(_) => return Ok(false),
                        None => claimed[v] = Some(pi),
                    }
                    if v == anchor {
                        break;
                    }
                    v = parent[v];
                }
            }
        }
        Ok(true)
    }

    pub fn is_convex_all<'a>(
        &self,
        chis: impl IntoIterator<Item = &'a Character>,
    ) -> Result<bool, Error> {
        for chi in chis {
            if !self.is_convex(chi)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Bytes equal exactly for label-respecting isomorphic trees over one
    /// label universe. Internal format, not a wire format.
    pub fn canonical_form(&self) -> Vec<u8> {
        canonical::unrooted_encoding(self, &|l| l.0, &|l| l.0.to_string()).into_bytes()
    }

    /// Newick text rooted at the topological center, children ordered by the
    /// smallest leaf name under them, no branch lengths.
    pub fn to_newick(&self, u: &LabelUniverse) -> String {
        let name = |l: Label| u.name(l).to_string();
        let mut s = canonical::unrooted_encoding(self, &name, &name);
        s.push(';');
        s
    }
}

/// Rooted tree: every leaf labeled, only the root may have degree 2.
#[derive(Clone, Debug)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    leaf_label: Vec<Option<Label>>,
    leaf_of: BTreeMap<Label, usize>,
}

impl RootedTree {
    pub fn from_children(
        root: usize,
        children: Vec<Vec<usize>>,
        leaves: &[(usize, Label)],
    ) -> Result<Self, Error> {
        let n = children.len();
        if n == 0 {
            return Err(Error::EmptyTree);
        }
        if root >= n {
            return Err(Error::InvalidTree("root out of range".into()));
        }
        let leaf_label = leaf_vec(n, leaves)?;
        let mut parent = vec![None; n];
        for v in 0..n {
            for &c in &children[v] {
                if c >= n || c == v {
                    return Err(Error::InvalidTree(format!("bad child of {v}")));
                }
                if parent[c].replace(v).is_some() {
                    return Err(Error::InvalidTree(format!("vertex {c} has two parents")));
                }
            }
        }
        if parent[root].is_some() {
            return Err(Error::InvalidTree("root has a parent".into()));
        }
        // Reachability from the root covers everything, so there is no cycle.
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        seen[root] = true;
        let mut count = 0;
        while let Some(v) = stack.pop() {
            count += 1;
            for &c in &children[v] {
                if !seen[c] {
                    seen[c] = true;
                    stack.push(c);
                }
            }
        }
        if count != n {
            return Err(Error::InvalidTree("not connected".into()));
        }
        let mut leaf_of = BTreeMap::new();
        for v in 0..n {
            match (children[v].len(), leaf_label[v]) {
                (0, Some(l)) => {
                    if leaf_of.insert(l, v).is_some() {
                        return Err(Error::InvalidTree("repeated leaf label".into()));
                    }
                }
                (0, None) => return Err(Error::InvalidTree(format!("unlabeled leaf {v}"))),
                (1, _) => return Err(Error::InvalidTree(format!("vertex {v} has one child"))),
                (_, Some(_)) => {
                    return Err(Error::InvalidTree(format!("labeled internal vertex {v}")))
                }
                _ => {}
            }
        }
        Ok(RootedTree { root, parent, children, leaf_label, leaf_of })
    }

    /// Single-leaf tree.
    pub fn leaf(l: Label) -> Self {
        RootedTree {
            root: 0,
            parent: vec![None],
            children: vec![Vec::new()],
            leaf_label: vec![Some(l)],
            leaf_of: BTreeMap::from([(l, 0)]),
        }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.children.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_of.len()
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.leaf_of.keys().copied().collect()
    }

    pub fn contains_label(&self, l: Label) -> bool {
        self.leaf_of.contains_key(&l)
    }

    pub(crate) fn children_of(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub(crate) fn label_at(&self, v: usize) -> Option<Label> {
        self.leaf_label[v]
    }

    fn leaf_vertex(&self, l: Label) -> Result<usize, Error> {
        self.leaf_of.get(&l).copied().ok_or(Error::UnknownLabel)
    }

    fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.children.len()];
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            for &c in &self.children[v] {
                depth[c] = depth[v] + 1;
                stack.push(c);
            }
        }
        depth
    }

    fn lca(&self, depth: &[usize], mut u: usize, mut v: usize) -> usize {
        while depth[u] > depth[v] {
            u = self.parent[u].expect("deeper vertex has a parent");
        }
        while depth[v] > depth[u] {
            v = self.parent[v].expect("deeper vertex has a parent");
        }
        while u != v {
            u = self.parent[u].expect("distinct vertices at equal depth are not the root");
            v = self.parent[v].expect("distinct vertices at equal depth are not the root");
        }
        u
    }

    /// True when the cherry's last common ancestor sits strictly below the
    /// ancestor of all three labels.
    pub fn displays_triplet(&self, t: &Triplet) -> Result<bool, Error> {
        let [a, b] = t.cherry();
        let c = self.leaf_vertex(t.outgroup())?;
        let depth = self.depths();
        let lab = self.lca(&depth, self.leaf_vertex(a)?, self.leaf_vertex(b)?);
        let labc = self.lca(&depth, lab, c);
        Ok(lab != labc)
    }

    pub fn displays_all_triplets<'a>(
        &self,
        ts: impl IntoIterator<Item = &'a Triplet>,
    ) -> Result<bool, Error> {
        for t in ts {
            if !self.displays_triplet(t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Restriction to `keep`: minimal connecting subtree, rooted at its
    /// vertex nearest the old root, all other degree-2 vertices suppressed.
    pub fn restrict(&self, keep: &BTreeSet<Label>) -> Result<RootedTree, Error> {
        if keep.len() < 2 {
            return Err(Error::TooFewLabels { need: 2, got: keep.len() });
        }
        let n = self.children.len();
        let adj = self.undirected_adjacency();
        let mut it = keep.iter();
        let anchor = self.leaf_vertex(*it.next().expect("keep is nonempty"))?;
        let walk = bfs_parents(&adj, anchor);
        let mut marked = vec![false; n];
        marked[anchor] = true;
        for &l in it {
            let mut v = self.leaf_vertex(l)?;
            while !marked[v] {
                marked[v] = true;
                v = walk[v];
            }
        }
        let depth = self.depths();
        let new_root = (0..n)
            .filter(|&v| marked[v])
            .min_by_key(|&v| depth[v])
            .expect("keep is nonempty");
        // Keep branching vertices, marked leaves, and the new root; walk the
        // degree-2 chains between them.
        let induced_degree =
            |v: usize| -> usize { adj[v].iter().filter(|&&u| marked[u]).count() };
        let is_kept = |v: usize| -> bool { v == new_root || induced_degree(v) != 2 };
        let mut remap = vec![usize::MAX; n];
        let mut kept_vertices = Vec::new();
        for v in 0..n {
            if marked[v] && is_kept(v) {
                remap[v] = kept_vertices.len();
                kept_vertices.push(v);
            }
        }
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); kept_vertices.len()];
        // Orient chains away from the new root.
        let mut stack = vec![new_root];
        let mut visited = vec![false; n];
        visited[new_root] = true;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !marked[u] || visited[u] {
                    continue;
                }
                let mut prev = v;
                let mut cur = u;
                visited[cur] = true;
                while !is_kept(cur) {
                    let next = *adj[cur]
                        .iter()
                        .find(|&&w| marked[w] && w != prev)
                        .expect("degree-2 chain continues");
                    prev = cur;
                    cur = next;
                    visited[cur] = true;
                }
                children[remap[v]].push(remap[cur]);
                stack.push(cur);
            }
        }
        let leaves: Vec<(usize, Label)> =
            keep.iter().map(|&l| (remap[self.leaf_of[&l]], l)).collect();
        RootedTree::from_children(remap[new_root], children, &leaves)
    }

    /// Drops rootedness. A degree-2 root is spliced out.
    pub fn unroot(&self) -> Result<UnrootedTree, Error> {
        if self.leaf_count() < 3 {
            return Err(Error::TooFewLabels { need: 3, got: self.leaf_count() });
        }
        let n = self.children.len();
        let mut edges = Vec::new();
        for v in 0..n {
            for &c in &self.children[v] {
                if v != self.root || self.children[self.root].len() != 2 {
                    edges.push((v, c));
                }
            }
        }
        if self.children[self.root].len() == 2 {
            edges.push((self.children[self.root][0], self.children[self.root][1]));
        }
        let leaves: Vec<(usize, Label)> =
            self.leaf_of.iter().map(|(&l, &v)| (v, l)).collect();
        UnrootedTree::from_edges_suppressing(n, &edges, &leaves)
    }

    fn undirected_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.children.len()];
        for v in 0..self.children.len() {
            for &c in &self.children[v] {
                adj[v].push(c);
                adj[c].push(v);
            }
        }
        adj
    }

    /// Bytes equal exactly for label-respecting isomorphic rooted trees over
    /// one label universe. Internal format, not a wire format.
    pub fn canonical_form(&self) -> Vec<u8> {
        canonical::rooted_encoding(self, &|l| l.0, &|l| l.0.to_string()).into_bytes()
    }

    /// Newick text with children ordered by the smallest leaf name under
    /// them, no branch lengths.
    pub fn to_newick(&self, u: &LabelUniverse) -> String {
        let name = |l: Label| u.name(l).to_string();
        let mut s = canonical::rooted_encoding(self, &name, &name);
        s.push(';');
        s
    }
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>, Error> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u >= n || v >= n || u == v {
            return Err(Error::InvalidTree(format!("bad edge ({u}, {v})")));
        }
        if adj[u].contains(&v) {
            return Err(Error::InvalidTree(format!("repeated edge ({u}, {v})")));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    Ok(adj)
}

fn replace_neighbor(adj: &mut [Vec<usize>], at: usize, old: usize, new: usize) {
    let slot = adj[at].iter().position(|&w| w == old).expect("old neighbor present");
    adj[at][slot] = new;
}

fn leaf_vec(n: usize, leaves: &[(usize, Label)]) -> Result<Vec<Option<Label>>, Error> {
    let mut labels = vec![None; n];
    for &(v, l) in leaves {
        if v >= n {
            return Err(Error::InvalidTree(format!("leaf vertex {v} out of range")));
        }
        if labels[v].replace(l).is_some() {
            return Err(Error::InvalidTree(format!("vertex {v} labeled twice")));
        }
    }
    Ok(labels)
}

fn check_connected_tree(adj: &[Vec<usize>]) -> Result<(), Error> {
    // Edge count n-1 is already known, so reaching every vertex rules out
    // cycles as well.
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 0;
    while let Some(v) = stack.pop() {
        count += 1;
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    if count != adj.len() {
        return Err(Error::InvalidTree("not connected".into()));
    }
    Ok(())
}

fn bfs_parents(adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; adj.len()];
    parent[start] = start;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            if parent[u] == usize::MAX {
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }
    parent
}

#[cfg(test)]
mod tests;
