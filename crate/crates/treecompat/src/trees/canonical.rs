//! Order-free tree encodings.
//!
//! A subtree encodes as its leaf text or as the comma-joined encodings of
//! its children in parentheses, children ordered by the smallest leaf key
//! inside them. That order is determined by the labels alone, so two trees
//! encode identically exactly when a label-respecting isomorphism maps one
//! onto the other. Unrooted trees are first rooted at their topological
//! center: the unique centroid, or a virtual root on the edge between the
//! two centroids.
//!
//! `canonical_form` keys leaves by id; Newick output keys them by name so
//! the text reads sorted no matter how the universe was built.

use super::{bfs_parents, RootedTree, UnrootedTree};
use crate::label::Label;

pub(super) fn rooted_encoding<K: Ord>(
    t: &RootedTree,
    key: &impl Fn(Label) -> K,
    show: &impl Fn(Label) -> String,
) -> String {
    encode_down(t, t.root(), key, show).1
}

fn encode_down<K: Ord>(
    t: &RootedTree,
    v: usize,
    key: &impl Fn(Label) -> K,
    show: &impl Fn(Label) -> String,
) -> (K, String) {
    match t.label_at(v) {
        Some(l) => (key(l), show(l)),
        None => {
            let mut parts: Vec<(K, String)> =
                t.children_of(v).iter().map(|&c| encode_down(t, c, key, show)).collect();
            parts.sort_by(|a, b| a.0.cmp(&b.0));
            let text = joined(&parts);
            let min = parts.into_iter().next().expect("internal vertex has children").0;
            (min, text)
        }
    }
}

pub(super) fn unrooted_encoding<K: Ord>(
    t: &UnrootedTree,
    key: &impl Fn(Label) -> K,
    show: &impl Fn(Label) -> String,
) -> String {
    let cs = centroids(t.adjacency_ref());
    match cs[..] {
        [c] => encode_away(t, c, usize::MAX, key, show).1,
        [c1, c2] => {
            let mut parts = vec![
                encode_away(t, c1, c2, key, show),
                encode_away(t, c2, c1, key, show),
            ];
            parts.sort_by(|a, b| a.0.cmp(&b.0));
            joined(&parts)
        }
        _ => unreachable!("a tree has one or two centroids"),
    }
}

fn encode_away<K: Ord>(
    t: &UnrootedTree,
    v: usize,
    parent: usize,
    key: &impl Fn(Label) -> K,
    show: &impl Fn(Label) -> String,
) -> (K, String) {
    match t.label_at(v) {
        Some(l) => (key(l), show(l)),
        None => {
            let mut parts: Vec<(K, String)> = t.adjacency_ref()[v]
                .iter()
                .filter(|&&u| u != parent)
                .map(|&u| encode_away(t, u, v, key, show))
                .collect();
            parts.sort_by(|a, b| a.0.cmp(&b.0));
            let text = joined(&parts);
            let min = parts.into_iter().next().expect("internal vertex branches").0;
            (min, text)
        }
    }
}

fn joined<K>(parts: &[(K, String)]) -> String {
    let mut s = String::from("(");
    for (i, (_, p)) in parts.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(p);
    }
    s.push(')');
    s
}

/// Vertices minimizing the largest component left by their removal. One or
/// two of them; two are always adjacent.
fn centroids(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n == 1 {
        return vec![0];
    }
    let parent = bfs_parents(adj, 0);
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &u in &adj[v] {
            if parent[u] == v {
                queue.push_back(u);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if v != 0 {
            size[parent[v]] += size[v];
        }
    }
    let largest_component = |v: usize| -> usize {
        adj[v]
            .iter()
            .map(|&u| if u == parent[v] && v != 0 { n - size[v] } else { size[u] })
            .max()
            .expect("every vertex of a 2+ vertex tree has a neighbor")
    };
    let best = (0..n).map(largest_component).min().expect("nonempty");
    (0..n).filter(|&v| largest_component(v) == best).collect()
}
