use super::{AggregateAtom, AggregateFunction, Body, BodyLiteral, Rational, Rule, SetTerm};
use crate::four::{self, TruthValue};
use crate::lattice::AtomSet;

/// `x(S)`: the weight lists of the entries whose condition holds in `x`,
/// with multiplicity.
pub fn eval_multiset(x: AtomSet, term: &SetTerm) -> Vec<Vec<Rational>> {
    term.entries
        .iter()
        .filter(|e| e.condition.is_subset(x))
        .map(|e| e.weights.clone())
        .collect()
}

/// The value of `f(S)` at `x` together with the truth of the comparison.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct AggregateValue {
    /// `None` when the multiset lies outside the domain of the function.
    pub value: Option<Rational>,
    pub holds: bool,
}

impl AggregateValue {
    pub fn is_defined(&self) -> bool {
        self.value.is_some()
    }

    /// Truth of the aggregate atom as a positive literal.
    pub fn positive(&self) -> TruthValue {
        TruthValue::from_bool(self.is_defined() && self.holds)
    }

    /// Truth of its negation; an undefined aggregate makes both false.
    pub fn negated(&self) -> TruthValue {
        TruthValue::from_bool(self.is_defined() && !self.holds)
    }
}

pub fn eval_aggregate(x: AtomSet, atom: &AggregateAtom) -> AggregateValue {
    let firsts = atom
        .term
        .entries
        .iter()
        .filter(|e| e.condition.is_subset(x))
        .filter_map(|e| e.weights.first().copied());
    let value = match atom.function {
        AggregateFunction::Sum => Some(firsts.sum()),
        AggregateFunction::Count => Some(Rational::from_integer(firsts.count() as i64)),
        AggregateFunction::Max => firsts.max(),
    };
    let holds = value.is_some_and(|v| atom.comparator.holds(v, atom.bound));
    AggregateValue { value, holds }
}

/// Two-valued truth of a rule body at `x`.
pub fn eval_body(x: AtomSet, rule: &Rule) -> bool {
    match &rule.body {
        Body::Formula(f) => four::eval_two(x, f) == TruthValue::T,
        Body::Conj(lits) => lits.iter().all(|l| match l {
            BodyLiteral::Pos(a) => x.contains(*a),
            BodyLiteral::Neg(a) => !x.contains(*a),
            BodyLiteral::PosAgg(g) => eval_aggregate(x, g).positive() == TruthValue::T,
            BodyLiteral::NegAgg(g) => eval_aggregate(x, g).negated() == TruthValue::T,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::{parse, Comparator, SetEntry};

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn term(entries: &[(i64, &[usize])]) -> SetTerm {
        SetTerm {
            entries: entries
                .iter()
                .map(|(w, c)| SetEntry {
                    weights: vec![r(*w)],
                    condition: AtomSet::from_atoms(c.iter().copied()),
                })
                .collect(),
        }
    }

    fn agg(
        function: AggregateFunction,
        t: SetTerm,
        comparator: Comparator,
        bound: i64,
    ) -> AggregateAtom {
        AggregateAtom {
            function,
            term: t,
            comparator,
            bound: r(bound),
        }
    }

    #[test]
    fn multisets() {
        let (p, q, rr) = (0, 1, 2);
        let s = term(&[(1, &[p]), (1, &[q])]);
        assert_eq!(
            eval_multiset(AtomSet::from_atoms([p, q]), &s),
            vec![vec![r(1)], vec![r(1)]]
        );
        assert!(eval_multiset(AtomSet::EMPTY, &s).is_empty());
        let s = term(&[(1, &[p]), (2, &[q]), (-1, &[rr])]);
        assert_eq!(eval_multiset(AtomSet::singleton(rr), &s), vec![vec![r(-1)]]);
    }

    #[test]
    fn aggregate_truth() {
        let s = term(&[(1, &[0]), (1, &[1])]);
        let a = agg(AggregateFunction::Sum, s, Comparator::Gt, 0);
        assert_eq!(
            eval_aggregate(AtomSet::from_atoms([0, 1]), &a).positive(),
            TruthValue::T
        );
        let a = agg(
            AggregateFunction::Sum,
            term(&[(1, &[2])]),
            Comparator::Lt,
            1,
        );
        assert_eq!(eval_aggregate(AtomSet::EMPTY, &a).positive(), TruthValue::T);
        let a = agg(
            AggregateFunction::Max,
            term(&[(1, &[0])]),
            Comparator::Ge,
            0,
        );
        let v = eval_aggregate(AtomSet::EMPTY, &a);
        assert!(!v.is_defined());
        assert_eq!((v.positive(), v.negated()), (TruthValue::F, TruthValue::F));
    }

    #[test]
    fn count_and_max() {
        let s = term(&[(5, &[0]), (5, &[0]), (-2, &[1])]);
        let x = AtomSet::from_atoms([0, 1]);
        let c = eval_aggregate(
            x,
            &agg(AggregateFunction::Count, s.clone(), Comparator::Eq, 3),
        );
        assert_eq!(c.value, Some(r(3)));
        assert!(c.holds);
        let m = eval_aggregate(
            x,
            &agg(AggregateFunction::Max, s.clone(), Comparator::Eq, 5),
        );
        assert_eq!(m.value, Some(r(5)));
        let sum = eval_aggregate(x, &agg(AggregateFunction::Sum, s, Comparator::Eq, 8));
        assert!(sum.holds);
        assert_eq!(sum.negated(), TruthValue::F);
    }

    #[test]
    fn bodies() {
        let p = parse("r | q :- #sum{1:s} > 0.\np :- not q.\nt.").unwrap();
        let u = p.universe().clone();
        let s = u.set_of(["s"]).unwrap();
        assert!(eval_body(s, &p.rules()[0]));
        assert!(!eval_body(u.set_of(["q"]).unwrap(), &p.rules()[1]));
        assert!(eval_body(AtomSet::EMPTY, &p.rules()[2]));
    }
}
