//! End-to-end acceptance suite. Each test drives one verification criterion
//! at its full advertised range and prints a single pass/fail line.

use treecompat::verify::{self, CriterionReport};

fn jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn check(report: CriterionReport) {
    let status = if report.passed() { "PASS" } else { "FAIL" };
    println!("acceptance: {} ({} checks) ... {status}", report.name, report.checks.len());
    for line in report.checks.iter().filter(|c| !c.pass) {
        println!("  failed: {}", line.name);
    }
    assert!(report.passed(), "criterion failed: {}", report.name);
}

#[test]
fn ladder_family_sizes() {
    check(verify::family_size_formula(8, jobs()).unwrap());
}

#[test]
fn ladders_are_incompatible() {
    check(verify::ladder_incompatible_brute(jobs()).unwrap());
}

#[test]
fn ladder_drop_witnesses() {
    check(verify::ladder_witnesses(6, jobs()).unwrap());
}

#[test]
fn even_split_families_are_minimal() {
    check(verify::even_split_minimality(8, jobs()).unwrap());
}

#[test]
fn quartet_and_character_oracles_agree() {
    check(verify::quartet_character_agreement(200, 101, jobs()).unwrap());
}

#[test]
fn character_families_are_minimal() {
    check(verify::character_family_minimality(5, jobs()).unwrap());
}

#[test]
fn unification_matches_the_tree_scan() {
    check(verify::unification_agreement(200, 202, jobs()).unwrap());
}

#[test]
fn triplet_methods_agree() {
    check(verify::triplet_method_agreement(300, 303, jobs()).unwrap());
}

#[test]
fn folded_ladders_are_minimal() {
    check(verify::folded_ladder_minimality(12, jobs()).unwrap());
}

#[test]
fn extraction_respects_the_size_bound() {
    check(verify::extraction_bound(100, 404, jobs()).unwrap());
}

#[test]
fn ring_families_and_their_lifts() {
    check(verify::ring_family_checks(8, jobs()).unwrap());
}

#[test]
fn rail_swap_is_exact() {
    check(verify::rail_swap_exactness(8, jobs()).unwrap());
}
