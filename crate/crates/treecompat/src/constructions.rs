//! Generators for the extremal families and their witness trees.
//!
//! The central object is the two-rail ladder: labels `a1..as` down one rail
//! and `b1..bt` down the other, one rung quartet per adjacent index pair on
//! each rail, plus a single cross quartet tying the far corners together.
//! The ladder is incompatible, yet dropping any one quartet leaves a
//! compatible set, and explicit witness trees certify every such drop. Its
//! induced characters and its folded triplet form inherit the same
//! extremal structure.

use std::collections::BTreeMap;

use crate::characters::characters_of_quartets;
use crate::trees::{Character, Quartet, Triplet, UnrootedTree};
use crate::triplets::triplets_of_quartets;
use crate::{Error, Label, LabelUniverse};

/// The quartet family on two rails of `s` and `t` labels.
#[derive(Clone, Debug)]
pub struct LadderFamily {
    s: usize,
    t: usize,
    universe: LabelUniverse,
    a: Vec<Label>,
    b: Vec<Label>,
}

impl LadderFamily {
    /// Both rails need at least two labels.
    pub fn new(s: usize, t: usize) -> Result<Self, Error> {
        if s < 2 || t < 2 {
            return Err(Error::BadFamilyParameter(format!(
                "rail lengths must be at least 2, got {s} and {t}"
            )));
        }
        let mut universe = LabelUniverse::new();
        let a: Vec<Label> = (1..=s)
            .map(|i| universe.intern(&format!("a{i}")).expect("valid name"))
            .collect();
        let b: Vec<Label> = (1..=t)
            .map(|j| universe.intern(&format!("b{j}")).expect("valid name"))
            .collect();
        Ok(LadderFamily { s, t, universe, a, b })
    }

    pub fn rail_lengths(&self) -> (usize, usize) {
        (self.s, self.t)
    }

    pub fn universe(&self) -> &LabelUniverse {
        &self.universe
    }

    /// The cross quartet joining the near and far corners: `a1 b1 | as bt`.
    pub fn cross_quartet(&self) -> Quartet {
        Quartet::new(self.a[0], self.b[0], self.a[self.s - 1], self.b[self.t - 1])
            .expect("distinct corners")
    }

    /// The rung `a_i a_{i+1} | b_j b_{j+1}` for `1 <= i < s`, `1 <= j < t`.
    pub fn rung_quartet(&self, i: usize, j: usize) -> Result<Quartet, Error> {
        if i < 1 || i >= self.s || j < 1 || j >= self.t {
            return Err(Error::BadFamilyParameter(format!(
                "rung ({i}, {j}) out of range for rails ({}, {})",
                self.s, self.t
            )));
        }
        Ok(Quartet::new(self.a[i - 1], self.a[i], self.b[j - 1], self.b[j])
            .expect("distinct labels"))
    }

    /// Cross quartet first, then rungs in row-major order; the family has
    /// `(s-1)(t-1) + 1` members.
    pub fn quartets(&self) -> Vec<Quartet> {
        let mut out = vec![self.cross_quartet()];
        for i in 1..self.s {
            for j in 1..self.t {
                out.push(self.rung_quartet(i, j).expect("in range"));
            }
        }
        out
    }

    /// The family with the rails exchanged.
    pub fn transposed(&self) -> LadderFamily {
        LadderFamily::new(self.t, self.s).expect("parameters already validated")
    }

    /// The rail-swapping bijection into the transposed family: `a_i` maps
    /// to `b_i` and `b_j` to `a_j`. Applying it to this family's quartets
    /// yields exactly the transposed family's quartets.
    pub fn swap_map(&self) -> BTreeMap<Label, Label> {
        let other = self.transposed();
        let mut map = BTreeMap::new();
        for (i, &l) in self.a.iter().enumerate() {
            map.insert(l, other.b[i]);
        }
        for (j, &l) in self.b.iter().enumerate() {
            map.insert(l, other.a[j]);
        }
        map
    }

    /// The tree whose one internal edge splits the rails apart: every
    /// `a_i` hangs off one end, every `b_j` off the other. It displays
    /// every rung but never the cross quartet.
    pub fn witness_missing_cross(&self) -> UnrootedTree {
        let n = self.s + self.t;
        let (hub_a, hub_b) = (n, n + 1);
        let mut edges = vec![(hub_a, hub_b)];
        let mut leaves = Vec::new();
        for (v, &l) in self.a.iter().enumerate() {
            edges.push((v, hub_a));
            leaves.push((v, l));
        }
        for (j, &l) in self.b.iter().enumerate() {
            let v = self.s + j;
            edges.push((v, hub_b));
            leaves.push((v, l));
        }
        UnrootedTree::from_edges(n + 2, &edges, &leaves).expect("valid witness shape")
    }

    /// The tree certifying that the family minus the rung `(x, y)` is
    /// compatible: a four-vertex spine with `a_1..a_x` and `b_1..b_y`
    /// grouped near one end and the remaining rail labels near the other.
    /// Displays the cross quartet and every other rung.
    pub fn witness_missing_rung(&self, x: usize, y: usize) -> Result<UnrootedTree, Error> {
        if x < 1 || x >= self.s || y < 1 || y >= self.t {
            return Err(Error::BadFamilyParameter(format!(
                "rung ({x}, {y}) out of range for rails ({}, {})",
                self.s, self.t
            )));
        }
        let n = self.s + self.t;
        let (low, high) = (n, n + 1);
        let (a_low, b_low) = (n + 2, n + 3);
        let (a_high, b_high) = (n + 4, n + 5);
        let mut edges = vec![
            (low, high),
            (a_low, low),
            (b_low, low),
            (a_high, high),
            (b_high, high),
        ];
        let mut leaves = Vec::new();
        for (v, &l) in self.a.iter().enumerate() {
            edges.push((v, if v + 1 <= x { a_low } else { a_high }));
            leaves.push((v, l));
        }
        for (j, &l) in self.b.iter().enumerate() {
            let v = self.s + j;
            edges.push((v, if j + 1 <= y { b_low } else { b_high }));
            leaves.push((v, l));
        }
        // Side vertices with a single leaf drop to degree 2 and vanish.
        UnrootedTree::from_edges_suppressing(n + 6, &edges, &leaves)
    }
}

/// The ladder sized to put `n` labels under `(n-2)^2/4 + 1` quartets:
/// rails of `floor(n/2)` and `ceil(n/2)`. Incompatible, minimally so.
pub fn minimal_incompatible_quartets(n: usize) -> Result<LadderFamily, Error> {
    if n < 4 {
        return Err(Error::BadFamilyParameter(format!(
            "need at least 4 labels for an incompatible quartet family, got {n}"
        )));
    }
    LadderFamily::new(n / 2, n.div_ceil(2))
}

/// The induced characters of the ladder on `r + 2` labels: a minimally
/// incompatible set of `floor(r/2) * ceil(r/2) + 1` characters, each with
/// exactly `r` states.
pub fn minimal_incompatible_characters(
    r: usize,
) -> Result<(Vec<Character>, LabelUniverse), Error> {
    if r < 2 {
        return Err(Error::BadFamilyParameter(format!(
            "need at least 2 states for an incompatible character family, got {r}"
        )));
    }
    let family = minimal_incompatible_quartets(r + 2)?;
    let chars = characters_of_quartets(&family.quartets())?;
    Ok((chars, family.universe.clone()))
}

/// The triplet family with one hub label `a` and ring labels `b1..br`:
/// `a b_r | b_1` plus `a b_i | b_{i+1}` for each `i < r`. Incompatible for
/// every `r >= 2`; its cluster graph is a star centered on the hub.
#[derive(Clone, Debug)]
pub struct RingFamily {
    r: usize,
    universe: LabelUniverse,
    hub: Label,
    ring: Vec<Label>,
}

impl RingFamily {
    pub fn new(r: usize) -> Result<Self, Error> {
        if r < 2 {
            return Err(Error::BadFamilyParameter(format!(
                "need a ring of at least 2 labels, got {r}"
            )));
        }
        let mut universe = LabelUniverse::new();
        let hub = universe.intern("a").expect("valid name");
        let ring: Vec<Label> = (1..=r)
            .map(|i| universe.intern(&format!("b{i}")).expect("valid name"))
            .collect();
        Ok(RingFamily { r, universe, hub, ring })
    }

    pub fn ring_length(&self) -> usize {
        self.r
    }

    pub fn universe(&self) -> &LabelUniverse {
        &self.universe
    }

    /// Wrap-around triplet first, then the chain in ring order; `r`
    /// triplets over `r + 1` labels.
    pub fn triplets(&self) -> Vec<Triplet> {
        let mut out = vec![
            Triplet::new(self.hub, self.ring[self.r - 1], self.ring[0]).expect("distinct"),
        ];
        for i in 0..self.r - 1 {
            out.push(Triplet::new(self.hub, self.ring[i], self.ring[i + 1]).expect("distinct"));
        }
        out
    }

    /// The quartet form: every triplet gains one shared fresh label. The
    /// lift has the same verdict as the ring itself.
    pub fn quartet_lift(&self) -> (Vec<Quartet>, LabelUniverse, Label) {
        let mut universe = self.universe.clone();
        let fresh = universe.intern("ell").expect("valid fresh name");
        let quartets = crate::triplets::quartets_of_triplets(&self.triplets(), fresh)
            .expect("fresh label cannot collide");
        (quartets, universe, fresh)
    }
}

/// Which short-rail label of the two-rail ladder plays the shared corner
/// when folding it into triplets.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Default)]
pub enum SharedChoice {
    /// Fold away `a2`.
    #[default]
    SecondA,
    /// Fold away `a1`; isomorphic to the default under a label swap.
    FirstA,
}

/// The triplet family folded out of the two-rail ladder.
#[derive(Clone, Debug)]
pub struct FoldedLadder {
    universe: LabelUniverse,
    shared: Label,
    triplets: Vec<Triplet>,
}

impl FoldedLadder {
    /// Folds the ladder with rails `(2, n - 1)` down to `n - 1` triplets
    /// over `n` labels. Incompatible, minimally so, for every `n >= 3`.
    pub fn new(n: usize, choice: SharedChoice) -> Result<Self, Error> {
        if n < 3 {
            return Err(Error::BadFamilyParameter(format!(
                "need at least 3 labels for an incompatible triplet family, got {n}"
            )));
        }
        let family = LadderFamily::new(2, n - 1)?;
        let shared = match choice {
            SharedChoice::SecondA => family.a[1],
            SharedChoice::FirstA => family.a[0],
        };
        let triplets = triplets_of_quartets(&family.quartets(), shared)?;
        Ok(FoldedLadder { universe: family.universe, shared, triplets })
    }

    pub fn triplets(&self) -> &[Triplet] {
        &self.triplets
    }

    /// Universe of the source ladder; the shared label stays interned but
    /// appears in no triplet.
    pub fn universe(&self) -> &LabelUniverse {
        &self.universe
    }

    pub fn shared(&self) -> Label {
        self.shared
    }
}

/// `FoldedLadder::new` with the default corner choice.
pub fn minimal_incompatible_triplets(n: usize) -> Result<FoldedLadder, Error> {
    FoldedLadder::new(n, SharedChoice::default())
}

#[cfg(test)]
mod tests;
