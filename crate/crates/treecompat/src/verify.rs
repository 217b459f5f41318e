//! Ready-made verification suites for the library's core claims.
//!
//! Each function drives one claim across a parameter range or a seeded
//! random suite and reports every instance it checked. Random inputs come
//! from a fixed-seed generator, so runs are reproducible; sub-checks are
//! independent and may execute on several threads, with report order fixed
//! regardless of the thread count.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{
    minimal_incompatible_characters, minimal_incompatible_quartets, minimal_incompatible_triplets,
    LadderFamily, RingFamily,
};
use crate::trees::{Quartet, Triplet};
use crate::{characters, quartets, triplets, Error, Label};

/// One verified instance: what was checked and whether it held.
#[derive(Clone, Debug)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
}

/// All instances checked for one claim.
#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub name: &'static str,
    pub checks: Vec<CheckLine>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

type Task = (String, Box<dyn FnOnce() -> bool + Send>);

/// Runs every task and collects results in task order. `jobs` bounds the
/// number of worker threads; order and content of the report do not depend
/// on it.
fn run(name: &'static str, jobs: usize, tasks: Vec<Task>) -> CriterionReport {
    let jobs = jobs.max(1).min(tasks.len().max(1));
    if jobs == 1 {
        let checks =
            tasks.into_iter().map(|(name, f)| CheckLine { name, pass: f() }).collect();
        return CriterionReport { name, checks };
    }
    let mut slots: Vec<Option<CheckLine>> = Vec::new();
    slots.resize_with(tasks.len(), || None);
    let queue: Vec<Mutex<Option<Task>>> = tasks.into_iter().map(|t| Mutex::new(Some(t))).collect();
    let next = AtomicUsize::new(0);
    let results = Mutex::new(slots);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= queue.len() {
                    break;
                }
                let (name, f) = queue[i].lock().expect("queue lock").take().expect("taken once");
                let line = CheckLine { name, pass: f() };
                results.lock().expect("result lock")[i] = Some(line);
            });
        }
    });
    let checks = results
        .into_inner()
        .expect("threads joined")
        .into_iter()
        .map(|slot| slot.expect("every task ran"))
        .collect();
    CriterionReport { name, checks }
}

fn rail_pairs(max: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for s in 2..=max {
        for t in 2..=max {
            out.push((s, t));
        }
    }
    out
}

/// Criterion: the ladder on rails `(s, t)` has exactly `(s-1)(t-1) + 1`
/// quartets over `s + t` labels, for all rails up to `max`.
pub fn family_size_formula(max: usize, jobs: usize) -> Result<CriterionReport, Error> {
    let mut tasks: Vec<Task> = Vec::new();
    for (s, t) in rail_pairs(max) {
        tasks.push((
            format!("ladder {s}x{t} size"),
            Box::new(move || {
                let family = LadderFamily::new(s, t).expect("rails validated");
                family.quartets().len() == (s - 1) * (t - 1) + 1
                    && family.universe().len() == s + t
            }),
        ));
    }
    Ok(run("family sizes", jobs, tasks))
}

/// Criterion: every desk-scale ladder is incompatible under the exhaustive
/// tree scan.
pub fn ladder_incompatible_brute(jobs: usize) -> Result<CriterionReport, Error> {
    let pairs = [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4), (3, 5), (4, 4)];
    let mut tasks: Vec<Task> = Vec::new();
    for (s, t) in pairs {
        tasks.push((
            format!("ladder {s}x{t} incompatible"),
            Box::new(move || {
                let family = LadderFamily::new(s, t).expect("rails validated");
                let report = quartets::compat_brute(&family.quartets(), 9).expect("within cap");
                !report.verdict.is_compatible()
            }),
        ));
    }
    Ok(run("ladder incompatibility", jobs, tasks))
}

/// Criterion: for every ladder up to `max x max` and every member, the
/// dedicated witness tree displays exactly the other members.
pub fn ladder_witnesses(max: usize, jobs: usize) -> Result<CriterionReport, Error> {
    let mut tasks: Vec<Task> = Vec::new();
    for (s, t) in rail_pairs(max) {
        tasks.push((
            format!("ladder {s}x{t} witnesses"),
            Box::new(move || {
                let family = LadderFamily::new(s, t).expect("rails validated");
                witnesses_certify_every_drop(&family)
            }),
        ));
    }
    Ok(run("drop witnesses", jobs, tasks))
}

fn witnesses_certify_every_drop(family: &LadderFamily) -> bool {
    let quartets = family.quartets();
    let cross = family.cross_quartet();
    let witness = family.witness_missing_cross();
    let cross_ok = quartets
        .iter()
        .all(|q| witness.displays_quartet(q).expect("labels present") == (*q != cross));
    if !cross_ok {
        return false;
    }
    let (s, t) = family.rail_lengths();
    for x in 1..s {
        for y in 1..t {
            let dropped = family.rung_quartet(x, y).expect("in range");
            let witness = family.witness_missing_rung(x, y).expect("in range");
            let ok = quartets
                .iter()
                .all(|q| witness.displays_quartet(q).expect("labels present") == (*q != dropped));
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Criterion: the evenly split ladder on `n` labels has the right size, is
/// incompatible, and loses incompatibility on every single drop, certified
/// by the explicit witness trees.
pub fn even_split_minimality(n_max: usize, jobs: usize) -> Result<CriterionReport, Error> {
    if n_max > 9 {
        return Err(Error::LabelCapExceeded { got: n_max, cap: 9 });
    }
    let mut tasks: Vec<Task> = Vec::new();
    for n in 4..=n_max {
        tasks.push((
            format!("even split n={n}"),
            Box::new(move || {
                let family = minimal_incompatible_quartets(n).expect("n validated");
                let quartets = family.quartets();
                let half = (n - 2) / 2;
                let expected = half * (n - 2 - half) + 1;
                quartets.len() == expected
                    && !quartets::compat_brute(&quartets, 9)
                        .expect("within cap")
                        .verdict
                        .is_compatible()
                    && witnesses_certify_every_drop(&family)
            }),
        ));
    }
    Ok(run("even split minimality", jobs, tasks))
}

fn random_quartet_set(rng: &mut ChaCha8Rng, max_labels: u32) -> Vec<Quartet> {
    let n = rng.gen_range(4..=max_labels);
    let count = rng.gen_range(1..=5usize);
    let mut set: BTreeSet<Quartet> = BTreeSet::new();
    let mut budget = 64 * count;
    while set.len() < count && budget > 0 {
        budget -= 1;
        let mut picks: Vec<u32> = Vec::new();
        while picks.len() < 4 {
            let l = rng.gen_range(0..n);
            if !picks.contains(&l) {
                picks.push(l);
            }
        }
        picks.sort();
        let (a, b, c, d) = (picks[0], picks[1], picks[2], picks[3]);
        let q = match rng.gen_range(0..3u8) {
            0 => (a, b, c, d),
            1 => (a, c, b, d),
            _ => (a, d, b, c),
        };
        set.insert(
            Quartet::new(Label(q.0), Label(q.1), Label(q.2), Label(q.3)).expect("distinct"),
        );
    }
    set.into_iter().collect()
}

fn random_triplet_set(rng: &mut ChaCha8Rng, max_labels: u32, max_len: usize) -> Vec<Triplet> {
    let n = rng.gen_range(3..=max_labels);
    let count = rng.gen_range(1..=max_len);
    let mut set: BTreeSet<Triplet> = BTreeSet::new();
    let mut budget = 64 * max_len;
    while set.len() < count && budget > 0 {
        budget -= 1;
        let mut picks: Vec<u32> = Vec::new();
        while picks.len() < 3 {
            let l = rng.gen_range(0..n);
            if !picks.contains(&l) {
                picks.push(l);
            }
        }
        picks.sort();
        let (a, b, c) = (picks[0], picks[1], picks[2]);
        let t = match rng.gen_range(0..3u8) {
            0 => (a, b, c),
            1 => (a, c, b),
            _ => (b, c, a),
        };
        set.insert(Triplet::new(Label(t.0), Label(t.1), Label(t.2)).expect("distinct"));
    }
    set.into_iter().collect()
}

/// Criterion: on random quartet sets and all small ladders, the quartet
/// oracle and the induced-character oracle return the same verdict.
pub fn quartet_character_agreement(
    cases: usize,
    seed: u64,
    jobs: usize,
) -> Result<CriterionReport, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tasks: Vec<Task> = Vec::new();
    for i in 0..cases {
        let qs = random_quartet_set(&mut rng, 6);
        tasks.push((
            format!("random quartet set {i}"),
            Box::new(move || quartet_character_verdicts_match(&qs)),
        ));
    }
    for (s, t) in rail_pairs(5).into_iter().filter(|&(s, t)| s + t <= 7) {
        tasks.push((
            format!("ladder {s}x{t} agreement"),
            Box::new(move || {
                let family = LadderFamily::new(s, t).expect("rails validated");
                quartet_character_verdicts_match(&family.quartets())
            }),
        ));
    }
    Ok(run("quartet and character verdicts", jobs, tasks))
}

fn quartet_character_verdicts_match(qs: &[Quartet]) -> bool {
    let direct = quartets::compat_brute(qs, 9).expect("within cap").verdict;
    let chars = characters::characters_of_quartets(qs).expect("valid set");
    let lifted = characters::compat_brute(&chars, 9).expect("within cap").verdict;
    direct == lifted
}

/// Criterion: the induced character family for each state budget `r` has
/// `floor(r/2) * ceil(r/2) + 1` members and is minimally incompatible.
pub fn character_family_minimality(r_max: usize, jobs: usize) -> Result<CriterionReport, Error> {
    if r_max + 2 > 9 {
        return Err(Error::LabelCapExceeded { got: r_max + 2, cap: 9 });
    }
    let mut tasks: Vec<Task> = Vec::new();
    for r in 2..=r_max {
        tasks.push((
            format!("character family r={r}"),
            Box::new(move || {
                let (chars, _) = minimal_incompatible_characters(r).expect("r validated");
                let expected = (r / 2) * r.div_ceil(2) + 1;
                let report = characters::minimality(&chars, 9).expect("within cap");
                chars.len() == expected
                    && characters::max_states(&chars) == r
                    && report.incompatible
                    && report.minimal
            }),
        ));
    }
    Ok(run("character family minimality", jobs, tasks))
}

/// Criterion: the unification search and the exhaustive tree scan agree on
/// random quartet sets, and the fixed three-step sequence for the textbook
/// compatible trio replays to an edgeless graph.
pub fn unification_agreement(
    cases: usize,
    seed: u64,
    jobs: usize,
) -> Result<CriterionReport, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tasks: Vec<Task> = Vec::new();
    for i in 0..cases {
        let qs = random_quartet_set(&mut rng, 6);
        tasks.push((
            format!("random quartet set {i}"),
            Box::new(move || {
                let brute = quartets::compat_brute(&qs, 9).expect("within cap").verdict;
                let unified = quartets::compat_unification(&qs).expect("valid set").verdict;
                brute == unified
            }),
        ));
    }
    let q = |a: u32, b: u32, c: u32, d: u32| {
        Quartet::new(Label(a), Label(b), Label(c), Label(d)).expect("distinct")
    };
    let trio = vec![q(0, 1, 2, 4), q(2, 3, 1, 5), q(0, 3, 4, 5)];
    tasks.push((
        "trio unifies".into(),
        Box::new({
            let trio = trio.clone();
            move || {
                quartets::compat_unification(&trio).expect("valid set").verdict.is_compatible()
            }
        }),
    ));
    tasks.push((
        "trio fixed replay".into(),
        Box::new(move || {
            let g = quartets::QuartetGraph::new(&trio).expect("valid set");
            let c = quartets::ClassId;
            let steps = vec![
                quartets::UnificationStep {
                    unified: BTreeSet::from([c(0), c(1)]),
                    new_class: c(6),
                },
                quartets::UnificationStep {
                    unified: BTreeSet::from([c(4), c(5)]),
                    new_class: c(7),
                },
                quartets::UnificationStep {
                    unified: BTreeSet::from([c(6), c(7)]),
                    new_class: c(8),
                },
            ];
            g.replay(&steps).map(|g| g.is_edgeless()).unwrap_or(false)
        }),
    ));
    tasks.push((
        "smallest ladder stuck".into(),
        Box::new(|| {
            let family = LadderFamily::new(2, 2).expect("rails validated");
            !quartets::compat_unification(&family.quartets())
                .expect("valid set")
                .verdict
                .is_compatible()
        }),
    ));
    Ok(run("unification agreement", jobs, tasks))
}

/// Criterion: the recursive checker, the exhaustive subset sweep, and the
/// rooted tree scan agree on random triplet sets.
pub fn triplet_method_agreement(
    cases: usize,
    seed: u64,
    jobs: usize,
) -> Result<CriterionReport, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tasks: Vec<Task> = Vec::new();
    for i in 0..cases {
        let rs = random_triplet_set(&mut rng, 6, 6);
        tasks.push((
            format!("random triplet set {i}"),
            Box::new(move || {
                let built = triplets::build_compat(&rs).expect("valid set").verdict;
                let swept = triplets::compat_subset_sweep(&rs, 12).expect("within cap");
                let brute = triplets::compat_brute(&rs, 7).expect("within cap").verdict;
                built == swept && built == brute
            }),
        ));
    }
    Ok(run("triplet method agreement", jobs, tasks))
}

/// Criterion: the folded ladder on `n` labels has `n - 1` triplets and is
/// minimally incompatible, for `n` up to `n_max`.
pub fn folded_ladder_minimality(n_max: usize, jobs: usize) -> Result<CriterionReport, Error> {
    let mut tasks: Vec<Task> = Vec::new();
    for n in 3..=n_max {
        tasks.push((
            format!("folded ladder n={n}"),
            Box::new(move || {
                let folded = minimal_incompatible_triplets(n).expect("n validated");
                let rs = folded.triplets();
                let labels = triplets::label_union(rs);
                let report = triplets::minimality(rs).expect("valid set");
                rs.len() == n - 1
                    && labels.len() == n
                    && report.incompatible
                    && report.minimal
            }),
        ));
    }
    Ok(run("folded ladder minimality", jobs, tasks))
}

/// Criterion: extraction from random incompatible triplet sets larger than
/// the size bound returns a minimal incompatible core within the bound
/// whose full cluster graph is connected.
pub fn extraction_bound(cases: usize, seed: u64, jobs: usize) -> Result<CriterionReport, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tasks: Vec<Task> = Vec::new();
    let mut found = 0usize;
    while found < cases {
        let rs = random_triplet_set(&mut rng, 8, 16);
        let labels = triplets::label_union(&rs);
        if rs.len() <= labels.len().saturating_sub(1) {
            continue;
        }
        if triplets::build_compat(&rs).expect("valid set").verdict.is_compatible() {
            continue;
        }
        let i = found;
        found += 1;
        tasks.push((
            format!("oversized incompatible set {i}"),
            Box::new(move || {
                let core = triplets::extract_incompatible_subset(&rs).expect("incompatible");
                let core_labels = triplets::label_union(&core);
                let report = triplets::minimality(&core).expect("valid set");
                core.iter().all(|t| rs.contains(t))
                    && core.len() < rs.len()
                    && core.len() <= core_labels.len() - 1
                    && report.incompatible
                    && report.minimal
                    && triplets::cluster_graph(&core, &core_labels).is_connected()
            }),
        ));
    }
    Ok(run("extraction bound", jobs, tasks))
}

/// Criterion: the hub-and-ring family has `r` triplets, is minimally
/// incompatible, and its quartet lift is incompatible too, in agreement
/// with the triplet verdict.
pub fn ring_family_checks(r_max: usize, jobs: usize) -> Result<CriterionReport, Error> {
    let mut tasks: Vec<Task> = Vec::new();
    for r in 2..=r_max {
        tasks.push((
            format!("ring r={r}"),
            Box::new(move || {
                let ring = RingFamily::new(r).expect("r validated");
                let rs = ring.triplets();
                let report = triplets::minimality(&rs).expect("valid set");
                if !(rs.len() == r && report.incompatible && report.minimal) {
                    return false;
                }
                let (lift, _, fresh) = ring.quartet_lift();
                let lifted_verdict =
                    quartets::compat_unification(&lift).expect("valid set").verdict;
                if lifted_verdict.is_compatible() {
                    return false;
                }
                if lift.len() <= 7 && triplets::label_union(&rs).len() + 1 <= 9 {
                    let brute = quartets::compat_brute(&lift, 9).expect("within cap").verdict;
                    if brute != lifted_verdict {
                        return false;
                    }
                }
                triplets::triplets_of_quartets(&lift, fresh).expect("shared label") == rs
            }),
        ));
    }
    Ok(run("ring family", jobs, tasks))
}

/// Criterion: the rail-swapping bijection carries each ladder exactly onto
/// its transpose, for all rails up to `max`.
pub fn rail_swap_exactness(max: usize, jobs: usize) -> Result<CriterionReport, Error> {
    let mut tasks: Vec<Task> = Vec::new();
    for (s, t) in rail_pairs(max) {
        tasks.push((
            format!("ladder {s}x{t} swap"),
            Box::new(move || {
                let family = LadderFamily::new(s, t).expect("rails validated");
                let map = family.swap_map();
                let mapped: BTreeSet<Quartet> = family
                    .quartets()
                    .iter()
                    .map(|q| {
                        let [p, r] = q.pairs();
                        Quartet::new(map[&p[0]], map[&p[1]], map[&r[0]], map[&r[1]])
                            .expect("bijection keeps labels distinct")
                    })
                    .collect();
                let expected: BTreeSet<Quartet> =
                    family.transposed().quartets().into_iter().collect();
                mapped == expected
            }),
        ));
    }
    Ok(run("rail swap exactness", jobs, tasks))
}
