//! Newick reader for the plain dialect: leaf names only, no branch lengths,
//! no internal names, no quoting, terminated by a semicolon.
//!
//! Groups with a single child collapse, so `((a,b));` parses to the same
//! tree as `(a,b);`. Leaf names extend the caller's universe.

use crate::error::Error;
use crate::label::{Label, LabelUniverse};

use super::RootedTree;

/// Parses one rooted tree, interning new leaf names into `universe`.
pub fn parse_rooted(text: &str, universe: &mut LabelUniverse) -> Result<RootedTree, Error> {
    let mut p = Parser { s: text.as_bytes(), i: 0, seen: Default::default() };
    p.skip_ws();
    let mut nodes = Vec::new();
    let root = p.subtree(&mut nodes, universe)?;
    p.skip_ws();
    p.expect(b';')?;
    p.skip_ws();
    if p.i != p.s.len() {
        return Err(p.err("trailing input after ';'"));
    }
    // Collapse single-child chains bottom-up; children were appended after
    // their parent, so a reverse scan sees children first.
    for v in (0..nodes.len()).rev() {
        while nodes[v].children.len() == 1 {
            let only = nodes[v].children[0];
            let grand = std::mem::take(&mut nodes[only].children);
            nodes[v].name = nodes[only].name.take();
            nodes[v].children = grand;
        }
    }
    // Drop the orphaned nodes.
    let mut reachable = vec![false; nodes.len()];
    let mut stack = vec![root];
    reachable[root] = true;
    while let Some(v) = stack.pop() {
        for &c in &nodes[v].children {
            reachable[c] = true;
            stack.push(c);
        }
    }
    let mut remap = vec![usize::MAX; nodes.len()];
    let mut kept = 0;
    for v in 0..nodes.len() {
        if reachable[v] {
            remap[v] = kept;
            kept += 1;
        }
    }
    let mut children = vec![Vec::new(); kept];
    let mut leaves: Vec<(usize, Label)> = Vec::new();
    for v in 0..nodes.len() {
        if !reachable[v] {
            continue;
        }
        children[remap[v]] = nodes[v].children.iter().map(|&c| remap[c]).collect();
        if let Some(l) = nodes[v].name {
            if nodes[v].children.is_empty() {
                leaves.push((remap[v], l));
            }
        }
    }
    RootedTree::from_children(remap[root], children, &leaves)
}

struct RawNode {
    children: Vec<usize>,
    name: Option<Label>,
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    seen: std::collections::BTreeSet<Label>,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::NewickSyntax { pos: self.i, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn expect(&mut self, b: u8) -> Result<(), Error> {
        if self.peek() == Some(b) {
            self.i += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {:?}", b as char)))
        }
    }

    fn subtree(
        &mut self,
        nodes: &mut Vec<RawNode>,
        universe: &mut LabelUniverse,
    ) -> Result<usize, Error> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let me = nodes.len();
                nodes.push(RawNode { children: Vec::new(), name: None });
                loop {
                    let c = self.subtree(nodes, universe)?;
                    nodes[me].children.push(c);
                    self.skip_ws();
                    match self.peek() {
                        Some(b',') => self.i += 1,
                        Some(b')') => {
                            self.i += 1;
                            break;
                        }
                        _ => return Err(self.err("expected ',' or ')'")),
                    }
                }
                self.skip_ws();
                match self.peek() {
                    Some(b':') => Err(self.err("branch lengths are not supported")),
                    Some(c) if is_name_byte(c) => {
                        Err(self.err("internal node names are not supported"))
                    }
                    _ => Ok(me),
                }
            }
            Some(c) if is_name_byte(c) => {
                let start = self.i;
                while self.peek().is_some_and(is_name_byte) {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i])
                    .map_err(|_| self.err("name is not valid utf-8"))?;
                if self.peek() == Some(b':') {
                    return Err(self.err("branch lengths are not supported"));
                }
                let label = universe.intern(name)?;
                if !self.seen.insert(label) {
                    return Err(Error::DuplicateLeaf(name.to_string()));
                }
                let me = nodes.len();
                nodes.push(RawNode { children: Vec::new(), name: Some(label) });
                Ok(me)
            }
            _ => Err(self.err("expected '(' or a leaf name")),
        }
    }
}

fn is_name_byte(b: u8) -> bool {
    !b.is_ascii_whitespace()
        && !matches!(
            b,
            b'(' | b')' | b'{' | b'}' | b'[' | b']' | b',' | b';' | b':' | b'|' | b'#' | b'\''
                | b'"'
        )
}
