use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::label::LabelUniverse;

fn parse(text: &str, u: &mut LabelUniverse) -> RootedTree {
    parse_rooted(text, u).unwrap()
}

fn set(u: &LabelUniverse, names: &[&str]) -> BTreeSet<Label> {
    names.iter().map(|n| u.get(n).unwrap()).collect()
}

fn quartet(u: &LabelUniverse, a: &str, b: &str, c: &str, d: &str) -> Quartet {
    Quartet::new(u.get(a).unwrap(), u.get(b).unwrap(), u.get(c).unwrap(), u.get(d).unwrap())
        .unwrap()
}

fn triplet(u: &LabelUniverse, a: &str, b: &str, c: &str) -> Triplet {
    Triplet::new(u.get(a).unwrap(), u.get(b).unwrap(), u.get(c).unwrap()).unwrap()
}

/// Three cherries around a center vertex.
fn six_leaf_star_of_cherries(u: &mut LabelUniverse) -> UnrootedTree {
    parse("((a,b),(c,d),(e,f));", u).unroot().unwrap()
}

/// Cherry (a,b) on one side, cherries (c,d) and (e,f) under a second
/// branching vertex.
fn six_leaf_caterpillar(u: &mut LabelUniverse) -> RootedTree {
    parse("((a,b),((c,d),(e,f)));", u)
}

#[test]
fn newick_round_trips_with_sorted_children() {
    let mut u = LabelUniverse::new();
    for text in ["a;", "(a,b);", "(a,b,c);", "((a,b),(c,d));", "((a,b),((c,d),(e,f)));"] {
        let t = parse(text, &mut u);
        assert_eq!(t.to_newick(&u), text);
    }
    let scrambled = parse("(((f,e),(d,c)),(b,a));", &mut u);
    assert_eq!(scrambled.to_newick(&u), "((a,b),((c,d),(e,f)));");
}

#[test]
fn newick_collapses_single_child_groups() {
    let mut u = LabelUniverse::new();
    let t = parse("((a,b));", &mut u);
    assert_eq!(t.to_newick(&u), "(a,b);");
    let t = parse("(((a)),(b,(c)));", &mut u);
    assert_eq!(t.to_newick(&u), "(a,(b,c));");
}

#[test]
fn newick_rejects_other_dialects() {
    let mut u = LabelUniverse::new();
    assert!(matches!(
        parse_rooted("(a:0.5,b);", &mut u),
        Err(Error::NewickSyntax { .. })
    ));
    assert!(matches!(
        parse_rooted("((a,b)anc,c);", &mut u),
        Err(Error::NewickSyntax { .. })
    ));
    assert!(matches!(parse_rooted("(a,(b,c);", &mut u), Err(Error::NewickSyntax { .. })));
    assert!(matches!(parse_rooted("(a,b); x", &mut u), Err(Error::NewickSyntax { .. })));
    assert!(matches!(parse_rooted("(a,b)", &mut u), Err(Error::NewickSyntax { .. })));
    assert!(matches!(parse_rooted("(a,a);", &mut u), Err(Error::DuplicateLeaf(_))));
}

#[test]
fn newick_position_points_at_the_problem() {
    let mut u = LabelUniverse::new();
    match parse_rooted("(a,b", &mut u) {
        Err(Error::NewickSyntax { pos, .. }) => assert_eq!(pos, 4),
        other => panic!("expected syntax error, got {other:?}"),
    }
}

#[test]
fn unroot_splices_a_binary_root() {
    let mut u = LabelUniverse::new();
    let caterpillar = six_leaf_caterpillar(&mut u);
    let unrooted = caterpillar.unroot().unwrap();
    assert_eq!(unrooted.vertex_count(), 10);
    // Its center is the vertex joining the three cherries, same shape as the
    // star of cherries.
    let star = six_leaf_star_of_cherries(&mut u);
    assert_eq!(unrooted.canonical_form(), star.canonical_form());
}

#[test]
fn unroot_keeps_a_higher_degree_root() {
    let mut u = LabelUniverse::new();
    let star = parse("(a,b,c);", &mut u);
    let t = star.unroot().unwrap();
    assert_eq!(t.vertex_count(), 4);
    assert_eq!(t.to_newick(&u), "(a,b,c);");
    let cherry = parse("(a,b);", &mut u);
    assert!(matches!(cherry.unroot(), Err(Error::TooFewLabels { need: 3, .. })));
}

#[test]
fn unrooted_restrict_drops_a_leaf_and_suppresses() {
    let mut u = LabelUniverse::new();
    let t = six_leaf_star_of_cherries(&mut u);
    let r = t.restrict(&set(&u, &["a", "b", "c", "d", "e"])).unwrap();
    let expected = parse("((a,b),(c,d),e);", &mut u).unroot().unwrap();
    assert_eq!(r.canonical_form(), expected.canonical_form());
    // Restricting to the full label set is the identity up to isomorphism.
    let full = t.restrict(&t.labels()).unwrap();
    assert_eq!(full.canonical_form(), t.canonical_form());
}

#[test]
fn unrooted_restrict_to_two_labels_is_a_single_edge() {
    let mut u = LabelUniverse::new();
    let t = six_leaf_star_of_cherries(&mut u);
    let r = t.restrict(&set(&u, &["a", "f"])).unwrap();
    assert_eq!(r.vertex_count(), 2);
    assert_eq!(r.labels(), set(&u, &["a", "f"]));
    assert!(t.restrict(&set(&u, &["a"])).is_err());
    let mut keep = set(&u, &["a", "b"]);
    keep.insert(Label(99));
    assert!(matches!(t.restrict(&keep), Err(Error::UnknownLabel)));
}

#[test]
fn rooted_restrict_keeps_the_highest_surviving_vertex_as_root() {
    let mut u = LabelUniverse::new();
    let t = six_leaf_caterpillar(&mut u);
    let r = t.restrict(&set(&u, &["a", "b", "c", "e"])).unwrap();
    let expected = parse("((a,b),(c,e));", &mut u);
    assert_eq!(r.canonical_form(), expected.canonical_form());
    // Cutting away the (a,b) side reroots at the deeper branching vertex.
    let r = t.restrict(&set(&u, &["c", "d", "e"])).unwrap();
    let expected = parse("((c,d),e);", &mut u);
    assert_eq!(r.canonical_form(), expected.canonical_form());
    let full = t.restrict(&t.labels()).unwrap();
    assert_eq!(full.canonical_form(), t.canonical_form());
}

#[test]
fn quartet_display_is_path_disjointness() {
    let mut u = LabelUniverse::new();
    let t = six_leaf_star_of_cherries(&mut u);
    for (a, b, c, d, want) in [
        ("a", "b", "c", "e", true),
        ("c", "d", "b", "f", true),
        ("a", "d", "e", "f", true),
        ("a", "b", "c", "d", true),
        ("a", "c", "b", "d", false),
        ("a", "e", "b", "f", false),
    ] {
        assert_eq!(
            t.displays_quartet(&quartet(&u, a, b, c, d)).unwrap(),
            want,
            "{a}{b}|{c}{d}"
        );
    }
    let q = Quartet::new(Label(90), Label(91), Label(92), Label(93)).unwrap();
    assert_eq!(t.displays_quartet(&q), Err(Error::UnknownLabel));
}

#[test]
fn star_displays_no_quartet() {
    let mut u = LabelUniverse::new();
    let t = parse("(a,b,c,d);", &mut u).unroot().unwrap();
    for (a, b, c, d) in [("a", "b", "c", "d"), ("a", "c", "b", "d"), ("a", "d", "b", "c")] {
        assert!(!t.displays_quartet(&quartet(&u, a, b, c, d)).unwrap());
    }
}

#[test]
fn triplet_display_needs_a_strictly_deeper_cherry() {
    let mut u = LabelUniverse::new();
    let t = six_leaf_caterpillar(&mut u);
    for (a, b, c, want) in [
        ("e", "c", "b", true),
        ("a", "b", "c", true),
        ("d", "e", "b", true),
        ("c", "d", "e", true),
        ("c", "e", "d", false),
        ("a", "c", "b", false),
    ] {
        assert_eq!(t.displays_triplet(&triplet(&u, a, b, c)).unwrap(), want, "{a}{b}|{c}");
    }
}

#[test]
fn convexity_checks_state_subtree_overlap() {
    let mut u = LabelUniverse::new();
    let star = parse("(a,b,c,d);", &mut u).unroot().unwrap();
    let get = |n: &str| u.get(n).unwrap();
    let paired = Character::new([
        BTreeSet::from([get("a"), get("b")]),
        BTreeSet::from([get("c"), get("d")]),
    ])
    .unwrap();
    assert!(!star.is_convex(&paired).unwrap());
    let one_pair = Character::new([
        BTreeSet::from([get("a"), get("b")]),
        BTreeSet::from([get("c")]),
        BTreeSet::from([get("d")]),
    ])
    .unwrap();
    assert!(star.is_convex(&one_pair).unwrap(), "singleton parts claim no internal vertex");
    let singletons = Character::new([
        BTreeSet::from([get("a")]),
        BTreeSet::from([get("b")]),
        BTreeSet::from([get("c")]),
        BTreeSet::from([get("d")]),
    ])
    .unwrap();
    assert!(star.is_convex(&singletons).unwrap());

    let mut u2 = LabelUniverse::new();
    let t = six_leaf_star_of_cherries(&mut u2);
    let get = |n: &str| u2.get(n).unwrap();
    let chi = Character::new([
        BTreeSet::from([get("a"), get("b")]),
        BTreeSet::from([get("c"), get("d")]),
        BTreeSet::from([get("e"), get("f")]),
    ])
    .unwrap();
    assert!(t.is_convex(&chi).unwrap(), "each part spans exactly its own cherry");
    let chi = Character::new([
        BTreeSet::from([get("a"), get("c")]),
        BTreeSet::from([get("b"), get("d")]),
        BTreeSet::from([get("e"), get("f")]),
    ])
    .unwrap();
    assert!(!t.is_convex(&chi).unwrap(), "crossed pairs share both cherry vertices");
    let chi = Character::new([
        BTreeSet::from([get("a"), get("b")]),
        BTreeSet::from([get("c"), get("d"), get("e"), get("f")]),
    ])
    .unwrap();
    assert!(t.is_convex(&chi).unwrap());
}

#[test]
fn canonical_form_ignores_vertex_numbering() {
    let l: Vec<Label> = (0..4).map(Label).collect();
    let a = UnrootedTree::from_edges(
        6,
        &[(0, 2), (0, 3), (0, 1), (1, 4), (1, 5)],
        &[(2, l[0]), (3, l[1]), (4, l[2]), (5, l[3])],
    )
    .unwrap();
    let b = UnrootedTree::from_edges(
        6,
        &[(5, 1), (5, 0), (5, 4), (4, 3), (4, 2)],
        &[(1, l[2]), (0, l[3]), (3, l[0]), (2, l[1])],
    )
    .unwrap();
    assert_eq!(a.canonical_form(), b.canonical_form());
    let c = UnrootedTree::from_edges(
        6,
        &[(0, 2), (0, 3), (0, 1), (1, 4), (1, 5)],
        &[(2, l[0]), (3, l[2]), (4, l[1]), (5, l[3])],
    )
    .unwrap();
    assert_ne!(a.canonical_form(), c.canonical_form(), "ab|cd vs ac|bd");
}

#[test]
fn invalid_structures_are_rejected() {
    let l: Vec<Label> = (0..4).map(Label).collect();
    // Degree-2 vertex.
    assert!(UnrootedTree::from_edges(3, &[(0, 1), (1, 2)], &[(0, l[0]), (2, l[1])]).is_err());
    // Unlabeled leaf.
    assert!(UnrootedTree::from_edges(4, &[(0, 1), (0, 2), (0, 3)], &[(1, l[0]), (2, l[1])])
        .is_err());
    // Cycle.
    assert!(UnrootedTree::from_edges(3, &[(0, 1), (1, 2), (2, 0)], &[]).is_err());
    // Disconnected.
    assert!(UnrootedTree::from_edges(4, &[(0, 1), (2, 3)], &[]).is_err());
    // Repeated label.
    assert!(UnrootedTree::from_edges(4, &[(0, 1), (0, 2), (0, 3)], &[
        (1, l[0]),
        (2, l[0]),
        (3, l[1])
    ])
    .is_err());
    // Rooted: non-root vertex with one child.
    assert!(RootedTree::from_children(0, vec![vec![1, 2], vec![3], vec![], vec![]], &[
        (2, l[0]),
        (3, l[1])
    ])
    .is_err());
}

fn label_set(n: u32) -> BTreeSet<Label> {
    (0..n).map(Label).collect()
}

fn arb_unrooted() -> impl Strategy<Value = UnrootedTree> {
    (4u32..=8).prop_flat_map(|n| {
        (Just(n), 0..unrooted_binary_count(n as usize))
            .prop_map(|(n, i)| unrooted_tree_at(&label_set(n), i).unwrap().unwrap())
    })
}

fn arb_rooted() -> impl Strategy<Value = RootedTree> {
    (3u32..=7).prop_flat_map(|n| {
        (Just(n), 0..rooted_binary_count(n as usize))
            .prop_map(|(n, i)| rooted_tree_at(&label_set(n), i).unwrap().unwrap())
    })
}

/// The quartet's own 6-vertex tree.
fn topology_of(q: &Quartet) -> UnrootedTree {
    let [[a, b], [c, d]] = q.pairs();
    UnrootedTree::from_edges(
        6,
        &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)],
        &[(2, a), (3, b), (4, c), (5, d)],
    )
    .unwrap()
}

/// The triplet's own 4-vertex rooted tree.
fn topology_of_triplet(t: &Triplet) -> RootedTree {
    let [a, b] = t.cherry();
    RootedTree::from_children(0, vec![vec![1, 2], vec![3, 4], vec![], vec![], vec![]], &[
        (2, t.outgroup()),
        (3, a),
        (4, b),
    ])
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Displaying a quartet is the same as restricting to its four labels
    /// and landing on its topology.
    #[test]
    fn display_matches_restriction(t in arb_unrooted(), picks in proptest::collection::vec(0usize..1000, 4)) {
        let ls: Vec<Label> = t.labels().into_iter().collect();
        let chosen: BTreeSet<Label> = picks.iter().map(|&p| ls[p % ls.len()]).collect();
        prop_assume!(chosen.len() == 4);
        let four: Vec<Label> = chosen.iter().copied().collect();
        let q = Quartet::new(four[0], four[1], four[2], four[3]).unwrap();
        let by_paths = t.displays_quartet(&q).unwrap();
        let by_restriction =
            t.restrict(&chosen).unwrap().canonical_form() == topology_of(&q).canonical_form();
        prop_assert_eq!(by_paths, by_restriction);
    }

    #[test]
    fn triplet_display_matches_restriction(t in arb_rooted(), picks in proptest::collection::vec(0usize..1000, 3)) {
        let ls: Vec<Label> = t.labels().into_iter().collect();
        let chosen: BTreeSet<Label> = picks.iter().map(|&p| ls[p % ls.len()]).collect();
        prop_assume!(chosen.len() == 3);
        let three: Vec<Label> = chosen.iter().copied().collect();
        for (a, b, c) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let tr = Triplet::new(three[a], three[b], three[c]).unwrap();
            let shown = t.displays_triplet(&tr).unwrap();
            let by_restriction = t.restrict(&chosen).unwrap().canonical_form()
                == topology_of_triplet(&tr).canonical_form();
            prop_assert_eq!(shown, by_restriction);
        }
    }

    /// Restriction keeps exactly the requested labels and stays a valid
    /// tree; restricting further commutes.
    #[test]
    fn restriction_is_sound(t in arb_unrooted(), picks in proptest::collection::vec(0usize..1000, 5)) {
        let ls: Vec<Label> = t.labels().into_iter().collect();
        let chosen: BTreeSet<Label> = picks.iter().map(|&p| ls[p % ls.len()]).collect();
        prop_assume!(chosen.len() >= 2);
        let r = t.restrict(&chosen).unwrap();
        prop_assert_eq!(r.labels(), chosen.clone());
        if chosen.len() > 2 {
            let smaller: BTreeSet<Label> = chosen.iter().skip(1).copied().collect();
            let direct = t.restrict(&smaller).unwrap();
            let via = r.restrict(&smaller).unwrap();
            prop_assert_eq!(direct.canonical_form(), via.canonical_form());
        }
    }

    /// Newick text survives a parse round trip for rooted and unrooted trees.
    #[test]
    fn newick_round_trip(t in arb_rooted()) {
        let mut u = LabelUniverse::new();
        let names: Vec<String> = t.labels().iter().map(|l| format!("x{}", l.0)).collect();
        for n in &names {
            u.intern(n).unwrap();
        }
        let text = t.to_newick(&u);
        let back = parse_rooted(&text, &mut u).unwrap();
        prop_assert_eq!(back.to_newick(&u), text);
        prop_assert_eq!(back.canonical_form(), t.canonical_form());
        if t.leaf_count() >= 3 {
            let unrooted = t.unroot().unwrap();
            let text = unrooted.to_newick(&u);
            let again = parse_rooted(&text, &mut u).unwrap().unroot().unwrap();
            prop_assert_eq!(again.canonical_form(), unrooted.canonical_form());
        }
    }
}
