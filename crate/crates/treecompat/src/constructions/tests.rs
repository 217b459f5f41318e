use std::collections::BTreeSet;

use super::*;
use crate::{characters, quartets, triplets};

fn q(a: u32, b: u32, c: u32, d: u32) -> Quartet {
    Quartet::new(Label(a), Label(b), Label(c), Label(d)).unwrap()
}

fn t(a: u32, b: u32, c: u32) -> Triplet {
    Triplet::new(Label(a), Label(b), Label(c)).unwrap()
}

#[test]
fn ladder_names_and_sizes() {
    let family = LadderFamily::new(4, 3).unwrap();
    assert_eq!(family.rail_lengths(), (4, 3));
    let u = family.universe();
    assert_eq!(u.len(), 7);
    assert_eq!(u.name(Label(0)), "a1");
    assert_eq!(u.name(Label(3)), "a4");
    assert_eq!(u.name(Label(4)), "b1");
    assert_eq!(u.name(Label(6)), "b3");

    for s in 2..=8usize {
        for t in 2..=8usize {
            if s + t > 10 {
                continue;
            }
            let family = LadderFamily::new(s, t).unwrap();
            assert_eq!(family.quartets().len(), (s - 1) * (t - 1) + 1);
            assert_eq!(family.universe().len(), s + t);
        }
    }
}

#[test]
fn smallest_ladder_golden() {
    let family = LadderFamily::new(2, 2).unwrap();
    // a1=0, a2=1, b1=2, b2=3.
    assert_eq!(family.quartets(), vec![q(0, 2, 1, 3), q(0, 1, 2, 3)]);
}

#[test]
fn four_by_three_rungs_are_row_major() {
    let family = LadderFamily::new(4, 3).unwrap();
    // a1..a4 = 0..3, b1..b3 = 4..6.
    let mut expected = vec![q(0, 4, 3, 6)];
    for i in 0..3u32 {
        for j in 0..2u32 {
            expected.push(q(i, i + 1, 4 + j, 5 + j));
        }
    }
    assert_eq!(family.quartets(), expected);
    assert!(matches!(family.rung_quartet(0, 1), Err(Error::BadFamilyParameter(_))));
    assert!(matches!(family.rung_quartet(4, 1), Err(Error::BadFamilyParameter(_))));
    assert!(matches!(family.rung_quartet(1, 3), Err(Error::BadFamilyParameter(_))));
}

#[test]
fn rail_swap_conjugates_the_family() {
    for (s, t) in [(2, 2), (2, 3), (3, 4), (4, 3), (5, 2)] {
        let family = LadderFamily::new(s, t).unwrap();
        let other = family.transposed();
        let map = family.swap_map();
        let mapped: BTreeSet<Quartet> = family
            .quartets()
            .iter()
            .map(|quartet| {
                let [p, r] = quartet.pairs();
                Quartet::new(map[&p[0]], map[&p[1]], map[&r[0]], map[&r[1]]).unwrap()
            })
            .collect();
        let expected: BTreeSet<Quartet> = other.quartets().into_iter().collect();
        assert_eq!(mapped, expected);

        // Swapping twice is the identity.
        let back = other.swap_map();
        for (&from, &mid) in &map {
            assert_eq!(back[&mid], from);
        }
    }
}

#[test]
fn every_label_of_a_short_ladder_meets_both_corners() {
    for m in 2..=6usize {
        let family = LadderFamily::new(2, m).unwrap();
        let quartets = family.quartets();
        assert_eq!(quartets.len(), m);
        for quartet in &quartets {
            assert!(quartet.contains(Label(0)) && quartet.contains(Label(1)));
        }
    }
}

/// The full certificate sweep: each family is incompatible, while the
/// dedicated witness tree for every single drop displays exactly the rest.
#[test]
fn ladder_is_minimally_incompatible_with_explicit_witnesses() {
    for s in 2..=6usize {
        for t in 2..=6usize {
            if s + t > 8 {
                continue;
            }
            let family = LadderFamily::new(s, t).unwrap();
            let quartets = family.quartets();
            let verdict = quartets::compat_brute(&quartets, 9).unwrap().verdict;
            assert!(!verdict.is_compatible(), "ladder ({s}, {t}) should conflict");

            let cross = family.cross_quartet();
            let witness = family.witness_missing_cross();
            for quartet in &quartets {
                assert_eq!(
                    witness.displays_quartet(quartet).unwrap(),
                    *quartet != cross,
                    "cross witness of ({s}, {t}) on {quartet:?}"
                );
            }

            for x in 1..s {
                for y in 1..t {
                    let dropped = family.rung_quartet(x, y).unwrap();
                    let witness = family.witness_missing_rung(x, y).unwrap();
                    for quartet in &quartets {
                        assert_eq!(
                            witness.displays_quartet(quartet).unwrap(),
                            *quartet != dropped,
                            "rung witness ({x}, {y}) of ({s}, {t}) on {quartet:?}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn rung_witness_rejects_bad_indices() {
    let family = LadderFamily::new(3, 3).unwrap();
    assert!(matches!(family.witness_missing_rung(0, 1), Err(Error::BadFamilyParameter(_))));
    assert!(matches!(family.witness_missing_rung(3, 1), Err(Error::BadFamilyParameter(_))));
    assert!(matches!(family.witness_missing_rung(1, 0), Err(Error::BadFamilyParameter(_))));
    assert!(matches!(family.witness_missing_rung(1, 3), Err(Error::BadFamilyParameter(_))));
}

#[test]
fn sized_families_reject_small_parameters() {
    assert!(matches!(LadderFamily::new(1, 5), Err(Error::BadFamilyParameter(_))));
    assert!(matches!(minimal_incompatible_quartets(3), Err(Error::BadFamilyParameter(_))));
    assert!(matches!(minimal_incompatible_characters(1), Err(Error::BadFamilyParameter(_))));
    assert!(matches!(RingFamily::new(1), Err(Error::BadFamilyParameter(_))));
    assert!(matches!(FoldedLadder::new(2, SharedChoice::SecondA), Err(Error::BadFamilyParameter(_))));
}

#[test]
fn quartet_family_splits_labels_evenly() {
    let family = minimal_incompatible_quartets(7).unwrap();
    assert_eq!(family.rail_lengths(), (3, 4));
    assert_eq!(family.quartets().len(), 7);
    assert_eq!(minimal_incompatible_quartets(4).unwrap().quartets().len(), 2);
    assert_eq!(minimal_incompatible_quartets(8).unwrap().quartets().len(), 10);
}

#[test]
fn character_family_counts_and_state_budget() {
    for (r, expected) in [(2usize, 2usize), (3, 3), (4, 5), (5, 7)] {
        let (chars, _) = minimal_incompatible_characters(r).unwrap();
        assert_eq!(chars.len(), expected);
        assert!(chars.iter().all(|c| c.num_states() == r));
        assert_eq!(characters::max_states(&chars), r);
    }
}

#[test]
fn character_family_is_minimally_incompatible_at_desk_scale() {
    for r in 2..=5usize {
        let (chars, _) = minimal_incompatible_characters(r).unwrap();
        let report = characters::minimality(&chars, 9).unwrap();
        assert!(report.incompatible && report.minimal, "character family r = {r}");
    }
}

#[test]
fn ring_names_golden_and_star_shape() {
    let ring = RingFamily::new(2).unwrap();
    // a=0, b1=1, b2=2.
    assert_eq!(ring.triplets(), vec![t(0, 2, 1), t(0, 1, 2)]);
    assert_eq!(ring.universe().name(Label(0)), "a");
    assert_eq!(ring.universe().name(Label(2)), "b2");

    let ring = RingFamily::new(5).unwrap();
    assert_eq!(ring.triplets().len(), 5);
    let rs = ring.triplets();
    let g = triplets::cluster_graph(&rs, &triplets::label_union(&rs));
    let hub = Label(0);
    assert!(g.edges().all(|e| e.contains(&hub)));
    assert_eq!(g.edges().count(), 5);
}

#[test]
fn ring_is_minimally_incompatible() {
    for r in 2..=6usize {
        let rs = RingFamily::new(r).unwrap().triplets();
        let report = triplets::minimality(&rs).unwrap();
        assert!(report.incompatible && report.minimal, "ring r = {r}");
    }
}

#[test]
fn ring_lift_round_trips_and_keeps_the_verdict() {
    for r in 2..=4usize {
        let ring = RingFamily::new(r).unwrap();
        let (quartets, universe, fresh) = ring.quartet_lift();
        assert_eq!(universe.name(fresh), "ell");
        assert_eq!(quartets.len(), r);
        assert_eq!(triplets::triplets_of_quartets(&quartets, fresh).unwrap(), ring.triplets());
        assert!(!quartets::compat_brute(&quartets, 9).unwrap().verdict.is_compatible());
        assert!(!quartets::compat_unification(&quartets).unwrap().verdict.is_compatible());
    }
}

#[test]
fn folded_ladder_goldens() {
    let folded = FoldedLadder::new(3, SharedChoice::SecondA).unwrap();
    // a1=0, a2=1, b1=2, b2=3; a2 folds away.
    assert_eq!(folded.triplets(), &[t(0, 2, 3), t(2, 3, 0)]);
    assert_eq!(folded.shared(), Label(1));
    assert_eq!(folded.universe().name(folded.shared()), "a2");

    let folded = FoldedLadder::new(3, SharedChoice::FirstA).unwrap();
    assert_eq!(folded.triplets(), &[t(1, 3, 2), t(2, 3, 1)]);
    assert_eq!(folded.shared(), Label(0));
}

#[test]
fn folded_ladder_sizes_and_minimality() {
    for n in 3..=12usize {
        for choice in [SharedChoice::SecondA, SharedChoice::FirstA] {
            let folded = FoldedLadder::new(n, choice).unwrap();
            assert_eq!(folded.triplets().len(), n - 1);
            let labels = triplets::label_union(folded.triplets());
            assert_eq!(labels.len(), n);
            assert!(!labels.contains(&folded.shared()));
            let report = triplets::minimality(folded.triplets()).unwrap();
            assert!(report.incompatible && report.minimal, "folded n = {n} {choice:?}");
        }
    }
    assert_eq!(
        minimal_incompatible_triplets(5).unwrap().triplets(),
        FoldedLadder::new(5, SharedChoice::SecondA).unwrap().triplets()
    );
}
