//! Four-valued truth (`T`, `F`, `U`, `C`), formula evaluation under an
//! [`ApproxPair`], and here-and-there satisfaction.
//!
//! An atom is `T` when it is in both bounds, `U` when only in the upper
//! bound, `C` when only in the lower bound and `F` otherwise. Conjunction is
//! the greatest lower bound and disjunction the least upper bound of the
//! truth order `F <ₜ C,U <ₜ T`.

use std::fmt;

use crate::error::Error;
use crate::lattice::{ApproxPair, AtomId, AtomSet};

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TruthValue {
    T,
    F,
    U,
    C,
}

impl TruthValue {
    pub const ALL: [TruthValue; 4] = [TruthValue::T, TruthValue::F, TruthValue::U, TruthValue::C];

    pub fn from_bool(b: bool) -> Self {
        if b {
            TruthValue::T
        } else {
            TruthValue::F
        }
    }

    /// Information order: `U <ᵢ F, T <ᵢ C`.
    pub fn leq_i(self, other: TruthValue) -> bool {
        self == other || self == TruthValue::U || other == TruthValue::C
    }

    /// Truth order: `F <ₜ C, U <ₜ T`.
    pub fn leq_t(self, other: TruthValue) -> bool {
        self == other || self == TruthValue::F || other == TruthValue::T
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> TruthValue {
        match self {
            TruthValue::T => TruthValue::F,
            TruthValue::F => TruthValue::T,
            v => v,
        }
    }

    /// `glb` w.r.t. `≤ₜ`.
    pub fn and(self, other: TruthValue) -> TruthValue {
        if self.leq_t(other) {
            self
        } else if other.leq_t(self) {
            other
        } else {
            TruthValue::F
        }
    }

    /// `lub` w.r.t. `≤ₜ`.
    pub fn or(self, other: TruthValue) -> TruthValue {
        if self.leq_t(other) {
            other
        } else if other.leq_t(self) {
            self
        } else {
            TruthValue::T
        }
    }

    pub fn is_two_valued(self) -> bool {
        matches!(self, TruthValue::T | TruthValue::F)
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TruthValue::T => "T",
            TruthValue::F => "F",
            TruthValue::U => "U",
            TruthValue::C => "C",
        };
        f.write_str(s)
    }
}

/// Propositional formulas without implication.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Atom(AtomId),
    Const(TruthValue),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// Left-nested conjunction; the empty conjunction is `T`.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Const(TruthValue::T))
    }

    /// Left-nested disjunction; the empty disjunction is `F`.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Const(TruthValue::F))
    }

    /// The disjunction of the atoms of a rule head.
    pub fn head(atoms: AtomSet) -> Formula {
        Formula::disjunction(atoms.iter().map(Formula::Atom))
    }

    pub fn atoms(&self) -> AtomSet {
        match self {
            Formula::Atom(a) => AtomSet::singleton(*a),
            Formula::Const(_) => AtomSet::EMPTY,
            Formula::Not(f) => f.atoms(),
            Formula::And(a, b) | Formula::Or(a, b) => a.atoms().union(b.atoms()),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Const(_) => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

/// The value of an atom under `(x, y)`.
pub fn atom_value(i: ApproxPair, atom: AtomId) -> TruthValue {
    match (i.lower.contains(atom), i.upper.contains(atom)) {
        (true, true) => TruthValue::T,
        (false, true) => TruthValue::U,
        (false, false) => TruthValue::F,
        (true, false) => TruthValue::C,
    }
}

/// `(x, y)(φ)`.
pub fn eval(i: ApproxPair, f: &Formula) -> TruthValue {
    match f {
        Formula::Atom(a) => atom_value(i, *a),
        Formula::Const(v) => *v,
        Formula::Not(g) => eval(i, g).neg(),
        Formula::And(a, b) => eval(i, a).and(eval(i, b)),
        Formula::Or(a, b) => eval(i, a).or(eval(i, b)),
    }
}

/// Two-valued evaluation, `(x, x)(φ)`. Constants `U` and `C` are passed
/// through unchanged, so the result is two-valued for constant-free formulas.
pub fn eval_two(x: AtomSet, f: &Formula) -> TruthValue {
    eval(ApproxPair::total(x), f)
}

/// Here-and-there satisfaction `(x, y) ⊨ φ`.
pub fn ht_satisfies(i: ApproxPair, f: &Formula) -> Result<bool, Error> {
    if !i.is_consistent() {
        return Err(Error::InconsistentPair);
    }
    Ok(ht_sat(i, f))
}

fn ht_sat(i: ApproxPair, f: &Formula) -> bool {
    match f {
        Formula::Atom(a) => i.lower.contains(*a),
        Formula::Const(v) => *v == TruthValue::T,
        Formula::Not(g) => eval_two(i.upper, g) != TruthValue::T,
        Formula::And(a, b) => ht_sat(i, a) && ht_sat(i, b),
        Formula::Or(a, b) => ht_sat(i, a) || ht_sat(i, b),
    }
}

/// Here-and-there satisfaction of the implication `body → ⋁head`.
pub fn ht_satisfies_rule(i: ApproxPair, body: &Formula, head: AtomSet) -> Result<bool, Error> {
    if head.is_empty() {
        return Err(Error::EmptyHead);
    }
    if !i.is_consistent() {
        return Err(Error::InconsistentPair);
    }
    let head = Formula::head(head);
    let here = !ht_sat(i, body) || ht_sat(i, &head);
    let there = eval_two(i.upper, body).neg().or(eval_two(i.upper, &head)) == TruthValue::T;
    Ok(here && there)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::subsets;
    use TruthValue::*;

    const P: AtomId = 0;
    const Q: AtomId = 1;
    const S: AtomId = 2;

    fn set(atoms: &[AtomId]) -> AtomSet {
        AtomSet::from_atoms(atoms.iter().copied())
    }

    fn pair(x: &[AtomId], y: &[AtomId]) -> ApproxPair {
        ApproxPair::new(set(x), set(y))
    }

    #[test]
    fn orders_match_the_bilattice() {
        for a in TruthValue::ALL {
            assert!(a.leq_i(a) && a.leq_t(a));
        }
        assert!(U.leq_i(F) && U.leq_i(T) && F.leq_i(C) && T.leq_i(C));
        assert!(!F.leq_i(T) && !T.leq_i(F));
        assert!(F.leq_t(C) && F.leq_t(U) && C.leq_t(T) && U.leq_t(T));
        assert!(!C.leq_t(U) && !U.leq_t(C));
        assert_eq!(C.and(U), F);
        assert_eq!(C.or(U), T);
        assert_eq!([T.neg(), F.neg(), C.neg(), U.neg()], [F, T, C, U]);
    }

    #[test]
    fn eval_examples() {
        let c = 0;
        assert_eq!(eval(pair(&[], &[c]), &Formula::not(Formula::Atom(c))), U);
        let contradiction = Formula::and(Formula::Atom(P), Formula::not(Formula::Atom(P)));
        assert_eq!(eval(pair(&[], &[P]), &contradiction), U);
        for x in subsets(set(&[P, Q])) {
            assert!(eval_two(x, &contradiction).is_two_valued());
        }
    }

    #[test]
    fn eval_two_examples() {
        let not_q = Formula::not(Formula::Atom(Q));
        assert_eq!(eval_two(AtomSet::EMPTY, &not_q), T);
        assert_eq!(eval_two(set(&[Q]), &not_q), F);
        assert_eq!(eval_two(AtomSet::EMPTY, &Formula::Const(T)), T);
    }

    #[test]
    fn ht_satisfies_examples() {
        let c = 0;
        assert!(!ht_satisfies(pair(&[], &[c]), &Formula::not(Formula::Atom(c))).unwrap());
        assert!(ht_satisfies(pair(&[P], &[P, Q]), &Formula::Atom(P)).unwrap());
        assert!(ht_satisfies(pair(&[Q], &[Q, P]), &Formula::not(Formula::Atom(S))).unwrap());
        assert!(matches!(
            ht_satisfies(pair(&[P], &[]), &Formula::Atom(P)),
            Err(Error::InconsistentPair)
        ));
    }

    #[test]
    fn ht_rule_examples() {
        // b ← ¬c with b = 0, c = 1
        let (b, c) = (0, 1);
        let body = Formula::not(Formula::Atom(c));
        assert!(ht_satisfies_rule(pair(&[], &[c]), &body, set(&[b])).unwrap());
        // p ← ¬p at ({q},{q,p})
        let body = Formula::not(Formula::Atom(P));
        assert!(ht_satisfies_rule(pair(&[Q], &[Q, P]), &body, set(&[P])).unwrap());
        // head satisfied at both levels
        let body = Formula::Atom(S);
        assert!(ht_satisfies_rule(pair(&[P, S], &[P, S]), &body, set(&[P, Q])).unwrap());
        assert!(matches!(
            ht_satisfies_rule(pair(&[], &[]), &body, AtomSet::EMPTY),
            Err(Error::EmptyHead)
        ));
    }
}
