//! Line-oriented text formats and DOT export.
//!
//! Quartets read one per line as `a b | c d`, triplets as `a b | c`,
//! characters as `a,b|c,e|d|f`. Whitespace around tokens is ignored, `#`
//! starts a comment, blank lines are skipped, and duplicate entries are
//! rejected with their line number. Serialization emits the same shapes in
//! canonical member order, so parse and print round-trip.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::quartets::{ClassId, QuartetGraph};
use crate::trees::{Character, Quartet, Triplet};
use crate::{Error, Label, LabelUniverse};

fn body(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn fail(line: usize, msg: impl Into<String>) -> Error {
    Error::Format { line, msg: msg.into() }
}

fn intern_all(
    names: &[&str],
    u: &mut LabelUniverse,
    line: usize,
) -> Result<Vec<Label>, Error> {
    names.iter().map(|n| u.intern(n).map_err(|e| fail(line, e.to_string()))).collect()
}

/// Parses `a b | c d` lines, interning labels in order of appearance.
pub fn parse_quartet_file(text: &str, u: &mut LabelUniverse) -> Result<Vec<Quartet>, Error> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = body(raw);
        if body.is_empty() {
            continue;
        }
        let sides: Vec<Vec<&str>> =
            body.split('|').map(|s| s.split_whitespace().collect()).collect();
        if sides.len() != 2 || sides[0].len() != 2 || sides[1].len() != 2 {
            return Err(fail(line, "expected `a b | c d`"));
        }
        let ls = intern_all(&[sides[0][0], sides[0][1], sides[1][0], sides[1][1]], u, line)?;
        let q = Quartet::new(ls[0], ls[1], ls[2], ls[3])
            .map_err(|e| fail(line, e.to_string()))?;
        if out.contains(&q) {
            return Err(fail(line, "duplicate quartet"));
        }
        out.push(q);
    }
    Ok(out)
}

/// Parses `a b | c` lines, interning labels in order of appearance.
pub fn parse_triplet_file(text: &str, u: &mut LabelUniverse) -> Result<Vec<Triplet>, Error> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = body(raw);
        if body.is_empty() {
            continue;
        }
        let sides: Vec<Vec<&str>> =
            body.split('|').map(|s| s.split_whitespace().collect()).collect();
        if sides.len() != 2 || sides[0].len() != 2 || sides[1].len() != 1 {
            return Err(fail(line, "expected `a b | c`"));
        }
        let ls = intern_all(&[sides[0][0], sides[0][1], sides[1][0]], u, line)?;
        let t = Triplet::new(ls[0], ls[1], ls[2]).map_err(|e| fail(line, e.to_string()))?;
        if out.contains(&t) {
            return Err(fail(line, "duplicate triplet"));
        }
        out.push(t);
    }
    Ok(out)
}

/// Parses `a,b|c,e|d|f` lines, one partition per line.
pub fn parse_character_file(text: &str, u: &mut LabelUniverse) -> Result<Vec<Character>, Error> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = body(raw);
        if body.is_empty() {
            continue;
        }
        let mut parts: Vec<BTreeSet<Label>> = Vec::new();
        for part in body.split('|') {
            let names: Vec<&str> =
                part.split(',').map(str::trim).filter(|n| !n.is_empty()).collect();
            if names.is_empty() {
                return Err(fail(line, "empty part"));
            }
            parts.push(intern_all(&names, u, line)?.into_iter().collect());
        }
        let c = Character::new(parts).map_err(|e| fail(line, e.to_string()))?;
        if out.contains(&c) {
            return Err(fail(line, "duplicate character"));
        }
        out.push(c);
    }
    Ok(out)
}

/// One quartet in file form, sides and pair members in canonical order.
pub fn quartet_line(q: &Quartet, u: &LabelUniverse) -> String {
    let [p, r] = q.pairs();
    format!("{} {} | {} {}", u.name(p[0]), u.name(p[1]), u.name(r[0]), u.name(r[1]))
}

/// One triplet in file form.
pub fn triplet_line(t: &Triplet, u: &LabelUniverse) -> String {
    let [a, b] = t.cherry();
    format!("{} {} | {}", u.name(a), u.name(b), u.name(t.outgroup()))
}

/// One character in file form, parts in canonical order.
pub fn character_line(c: &Character, u: &LabelUniverse) -> String {
    c.parts()
        .iter()
        .map(|p| p.iter().map(|&l| u.name(l)).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("|")
}

/// DOT text for a quartet graph. Every class becomes a node named by its
/// sorted label set; every surviving colored edge becomes one `--` line
/// labeled with its source quartet. Ordering follows class ids and input
/// order, so output is byte-stable.
pub fn quartet_graph_dot(g: &QuartetGraph, u: &LabelUniverse) -> String {
    let node = |c: ClassId| -> String {
        g.class_labels(c)
            .expect("edges reference live classes")
            .iter()
            .map(|&l| u.name(l))
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut s = String::from("graph {\n");
    for c in g.class_ids() {
        writeln!(s, "  \"{}\";", node(c)).expect("string write");
    }
    for (q, edges) in g.live_colors() {
        for (x, y) in edges {
            writeln!(s, "  \"{}\" -- \"{}\" [label=\"{}\"];", node(x), node(y), quartet_line(&q, u))
                .expect("string write");
        }
    }
    s.push('}');
    s.push('\n');
    s
}
