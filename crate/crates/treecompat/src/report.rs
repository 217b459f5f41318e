//! Result types shared by the compatibility checkers.

/// Outcome of a compatibility test.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Compatible,
    Incompatible,
}

impl Verdict {
    pub fn is_compatible(self) -> bool {
        matches!(self, Verdict::Compatible)
    }
}

/// Verdict plus whatever evidence the deciding method produced.
///
/// `C` is the constraint kind (quartet, character, triplet) and `W` the
/// witness tree kind. A witness, when present, displays every input
/// constraint; a certificate, when present, is itself incompatible.
#[derive(Clone, Debug)]
pub struct CompatReport<C, W> {
    pub verdict: Verdict,
    pub witness: Option<W>,
    pub certificate: Option<Vec<C>>,
}

impl<C, W> CompatReport<C, W> {
    pub fn compatible(witness: Option<W>) -> Self {
        CompatReport { verdict: Verdict::Compatible, witness, certificate: None }
    }

    pub fn incompatible(certificate: Option<Vec<C>>) -> Self {
        CompatReport { verdict: Verdict::Incompatible, witness: None, certificate }
    }
}

/// Answer to "is this set incompatible, and minimally so?".
#[derive(Clone, Debug)]
pub struct MinimalityReport<C> {
    pub incompatible: bool,
    /// True when the set is incompatible and every proper subset is compatible.
    pub minimal: bool,
    /// A constraint whose removal keeps the set incompatible; present exactly
    /// when the set is incompatible but not minimal.
    pub redundant: Option<C>,
}
