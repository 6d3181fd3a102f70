//! The finite powerset lattice over a program's atoms.
//!
//! Elements are stored as bit masks ([`AtomSet`]); bit `i` stands for the
//! `i`-th atom of the [`Universe`], which keeps its atoms sorted by name so
//! that every enumeration in the crate is deterministic. Pairs of elements
//! ([`ApproxPair`]) approximate intervals, and finite sets of elements
//! ([`NdSet`]) are the range of non-deterministic operators.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;

/// Default bound on the number of atoms every brute-force solver accepts.
pub const DEFAULT_MAX_ATOMS: usize = 12;

/// Hard limit imposed by the `u64` representation of [`AtomSet`].
pub const MAX_REPRESENTABLE_ATOMS: usize = 63;

/// Index of an atom inside its [`Universe`].
pub type AtomId = usize;

/// An element of the powerset lattice, as a bit mask over a universe.
#[derive(Copy, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet(u64);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        AtomSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set of the first `n` atoms (the top element of a universe of size `n`).
    pub fn full(n: usize) -> Self {
        assert!(
            n <= MAX_REPRESENTABLE_ATOMS,
            "universe too large for AtomSet"
        );
        AtomSet((1u64 << n) - 1)
    }

    pub fn singleton(atom: AtomId) -> Self {
        assert!(atom < MAX_REPRESENTABLE_ATOMS);
        AtomSet(1u64 << atom)
    }

    pub fn from_atoms<I: IntoIterator<Item = AtomId>>(atoms: I) -> Self {
        atoms.into_iter().fold(AtomSet::EMPTY, |acc, a| acc.with(a))
    }

    pub fn contains(self, atom: AtomId) -> bool {
        atom < 64 && self.0 & (1u64 << atom) != 0
    }

    #[must_use]
    pub fn with(self, atom: AtomId) -> Self {
        self.union(AtomSet::singleton(atom))
    }

    #[must_use]
    pub fn union(self, other: AtomSet) -> Self {
        AtomSet(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: AtomSet) -> Self {
        AtomSet(self.0 & other.0)
    }

    /// `self ∖ other`.
    #[must_use]
    pub fn minus(self, other: AtomSet) -> Self {
        AtomSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_strict_subset(self, other: AtomSet) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn intersects(self, other: AtomSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Atom indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = AtomId> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The lattice difference `y ⊘ x`. On a powerset lattice this is the unique
/// `z` with `z ∩ x = ∅` and `x ∪ y = x ∪ z`, i.e. plain set difference.
pub fn difference(y: AtomSet, x: AtomSet) -> AtomSet {
    y.minus(x)
}

/// Every `z` with `lower ⊆ z ⊆ upper`, ordered by counting over the free
/// atoms with the first atom as the lowest digit.
pub fn enumerate_interval(lower: AtomSet, upper: AtomSet) -> Result<Interval, Error> {
    if !lower.is_subset(upper) {
        return Err(Error::InconsistentPair);
    }
    Ok(Interval::new(lower, upper))
}

/// Iterator over a (consistent) interval of the powerset lattice.
#[derive(Clone, Debug)]
pub struct Interval {
    lower: AtomSet,
    free: u64,
    next: Option<u64>,
}

impl Interval {
    /// Callers guarantee `lower ⊆ upper`.
    pub(crate) fn new(lower: AtomSet, upper: AtomSet) -> Self {
        debug_assert!(lower.is_subset(upper));
        Interval {
            lower,
            free: upper.minus(lower).bits(),
            next: Some(0),
        }
    }
}

impl Iterator for Interval {
    type Item = AtomSet;

    fn next(&mut self) -> Option<AtomSet> {
        let sub = self.next?;
        self.next = if sub == self.free {
            None
        } else {
            Some(sub.wrapping_sub(self.free) & self.free)
        };
        Some(AtomSet(self.lower.0 | sub))
    }
}

/// All subsets of `set`, in interval order.
pub fn subsets(set: AtomSet) -> Interval {
    Interval::new(AtomSet::EMPTY, set)
}

/// All consistent pairs `x ⊆ y ⊆ 𝒜`, ordered by `(x, y)`. There are `3^n`.
pub fn enumerate_consistent_pairs(
    universe: &Universe,
    max_atoms: usize,
) -> Result<impl Iterator<Item = ApproxPair>, Error> {
    universe.check_cap(max_atoms)?;
    let top = universe.top();
    Ok(subsets(top).flat_map(move |x| Interval::new(x, top).map(move |y| ApproxPair::new(x, y))))
}

/// A pair `(x, y)` of lattice elements: `x` collects the atoms that are true
/// or contradictory, `y` those that are true or unknown.
#[derive(Copy, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ApproxPair {
    pub lower: AtomSet,
    pub upper: AtomSet,
}

impl ApproxPair {
    pub fn new(lower: AtomSet, upper: AtomSet) -> Self {
        ApproxPair { lower, upper }
    }

    pub fn total(x: AtomSet) -> Self {
        ApproxPair::new(x, x)
    }

    pub fn is_consistent(&self) -> bool {
        self.lower.is_subset(self.upper)
    }

    pub fn is_total(&self) -> bool {
        self.lower == self.upper
    }

    /// Truth order: `x ⊆ w` and `y ⊆ z`.
    pub fn leq_t(&self, other: &ApproxPair) -> bool {
        self.lower.is_subset(other.lower) && self.upper.is_subset(other.upper)
    }

    /// Information order: `x ⊆ w` and `z ⊆ y`.
    pub fn leq_i(&self, other: &ApproxPair) -> bool {
        self.lower.is_subset(other.lower) && other.upper.is_subset(self.upper)
    }

    /// The undecided atoms, `y ⊘ x`.
    pub fn gap(&self) -> AtomSet {
        difference(self.upper, self.lower)
    }

    pub fn swap(&self) -> ApproxPair {
        ApproxPair::new(self.upper, self.lower)
    }
}

/// A finite set of lattice elements, stored extensionally.
pub type NdSet = BTreeSet<AtomSet>;

/// `X ⪯ˢ Y`: every `y ∈ Y` is above some `x ∈ X`.
pub fn smyth_leq(xs: &NdSet, ys: &NdSet) -> bool {
    ys.iter().all(|y| xs.iter().any(|x| x.is_subset(*y)))
}

/// `X ⪯ᴴ Y`: every `x ∈ X` is below some `y ∈ Y`.
pub fn hoare_leq(xs: &NdSet, ys: &NdSet) -> bool {
    xs.iter().all(|x| ys.iter().any(|y| x.is_subset(*y)))
}

/// Smyth comparison against a single element, `X ⪯ˢ {y}`.
pub fn smyth_below(xs: &NdSet, y: AtomSet) -> bool {
    xs.iter().any(|x| x.is_subset(y))
}

/// The value of a non-deterministic approximating operator: a set of lower
/// candidates and a set of upper candidates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NdPair {
    pub lower: NdSet,
    pub upper: NdSet,
}

impl NdPair {
    pub fn new(lower: NdSet, upper: NdSet) -> Self {
        NdPair { lower, upper }
    }

    pub fn exact(set: NdSet) -> Self {
        NdPair::new(set.clone(), set)
    }

    pub fn singletons(pair: ApproxPair) -> Self {
        NdPair::new(NdSet::from([pair.lower]), NdSet::from([pair.upper]))
    }

    /// Membership reading of `(x, y) ∈ 𝒪(x, y)`.
    pub fn contains(&self, pair: ApproxPair) -> bool {
        self.lower.contains(&pair.lower) && self.upper.contains(&pair.upper)
    }

    /// `X₁×Y₁ ⪯ᴬᵢ X₂×Y₂` iff `X₁ ⪯ˢ X₂` and `Y₂ ⪯ᴴ Y₁`.
    pub fn aprec_leq(&self, other: &NdPair) -> bool {
        aprec_leq(self, other)
    }
}

pub fn aprec_leq(a: &NdPair, b: &NdPair) -> bool {
    smyth_leq(&a.lower, &b.lower) && hoare_leq(&b.upper, &a.upper)
}

/// The atoms of a program, sorted by name.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Universe {
    atoms: Vec<String>,
}

impl Universe {
    /// Builds a universe from arbitrary names; duplicates are merged and the
    /// result is sorted.
    pub fn new<I, S>(names: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut atoms: Vec<String> = names.into_iter().map(Into::into).collect();
        if atoms.iter().any(|a| a.is_empty()) {
            return Err(Error::EmptyAtomName);
        }
        atoms.sort();
        atoms.dedup();
        if atoms.len() > MAX_REPRESENTABLE_ATOMS {
            return Err(Error::CapExceeded {
                size: atoms.len(),
                cap: MAX_REPRESENTABLE_ATOMS,
            });
        }
        Ok(Universe { atoms })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.atoms
    }

    pub fn name(&self, atom: AtomId) -> &str {
        &self.atoms[atom]
    }

    pub fn id(&self, name: &str) -> Result<AtomId, Error> {
        self.atoms
            .binary_search_by(|a| a.as_str().cmp(name))
            .map_err(|_| Error::UnknownAtom(name.to_string()))
    }

    /// `𝒜`, the top element.
    pub fn top(&self) -> AtomSet {
        AtomSet::full(self.atoms.len())
    }

    pub fn check_cap(&self, max_atoms: usize) -> Result<(), Error> {
        if self.atoms.len() > max_atoms {
            Err(Error::CapExceeded {
                size: self.atoms.len(),
                cap: max_atoms,
            })
        } else {
            Ok(())
        }
    }

    pub fn contains_set(&self, set: AtomSet) -> bool {
        set.is_subset(self.top())
    }

    pub fn check_set(&self, set: AtomSet) -> Result<(), Error> {
        if self.contains_set(set) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    pub fn check_pair(&self, pair: ApproxPair) -> Result<(), Error> {
        self.check_set(pair.lower)?;
        self.check_set(pair.upper)
    }

    pub fn set_of<I, S>(&self, names: I) -> Result<AtomSet, Error>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        names
            .into_iter()
            .try_fold(AtomSet::EMPTY, |acc, n| Ok(acc.with(self.id(n.as_ref())?)))
    }

    pub fn names_of(&self, set: AtomSet) -> Vec<String> {
        set.iter().map(|a| self.atoms[a].clone()).collect()
    }

    /// `leq_t` with both pairs validated against this universe.
    pub fn leq_t(&self, a: ApproxPair, b: ApproxPair) -> Result<bool, Error> {
        self.check_pair(a)?;
        self.check_pair(b)?;
        Ok(a.leq_t(&b))
    }

    /// `leq_i` with both pairs validated against this universe.
    pub fn leq_i(&self, a: ApproxPair, b: ApproxPair) -> Result<bool, Error> {
        self.check_pair(a)?;
        self.check_pair(b)?;
        Ok(a.leq_i(&b))
    }

    /// `∅` or `{p,q}`.
    pub fn show_set(&self, set: AtomSet) -> String {
        if set.is_empty() {
            "∅".to_string()
        } else {
            format!("{{{}}}", self.names_of(set).join(","))
        }
    }

    pub fn show_pair(&self, pair: ApproxPair) -> String {
        format!(
            "({},{})",
            self.show_set(pair.lower),
            self.show_set(pair.upper)
        )
    }

    pub fn show_nd(&self, set: &NdSet) -> String {
        let items: Vec<String> = set.iter().map(|s| self.show_set(*s)).collect();
        format!("{{{}}}", items.join(","))
    }
}
