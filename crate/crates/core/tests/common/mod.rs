//! Reference implementations written straight from the definitions, kept
//! independent of the library's evaluators, plus program sources.
#![allow(dead_code)]

use std::collections::BTreeSet;

use aftlab::harness::{generate_program, GeneratorConfig};
use aftlab::program::{
    AggregateAtom, AggregateFunction, Body, BodyLiteral, Comparator, Rational, Rule,
};
use aftlab::{ApproxPair, AtomSet, Program, TruthValue};

pub fn subsets(top: AtomSet) -> Vec<AtomSet> {
    let atoms: Vec<usize> = top.iter().collect();
    (0..1u64 << atoms.len())
        .map(|bits| {
            AtomSet::from_atoms(
                atoms
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| bits >> k & 1 == 1)
                    .map(|(_, a)| *a),
            )
        })
        .collect()
}

pub fn all_pairs(top: AtomSet) -> Vec<ApproxPair> {
    let s = subsets(top);
    s.iter()
        .flat_map(|&x| s.iter().map(move |&y| ApproxPair::new(x, y)))
        .collect()
}

pub fn consistent_pairs(top: AtomSet) -> Vec<ApproxPair> {
    all_pairs(top)
        .into_iter()
        .filter(|i| i.lower.is_subset(i.upper))
        .collect()
}

/// `count` generated programs; `tweak` adjusts the configuration per seed.
pub fn programs(count: u64, tweak: impl Fn(&mut GeneratorConfig)) -> Vec<Program> {
    (0..count)
        .map(|seed| {
            let mut cfg = GeneratorConfig {
                seed,
                ..GeneratorConfig::default()
            };
            tweak(&mut cfg);
            generate_program(&cfg).expect("valid generator config")
        })
        .collect()
}

pub fn aggregate_free(count: u64) -> Vec<Program> {
    programs(count, |c| c.agg_prob = 0.0)
}

// Four-valued truth by lookup, encoded as (lower bit, upper bit).
fn bits(v: TruthValue) -> (bool, bool) {
    match v {
        TruthValue::T => (true, true),
        TruthValue::U => (false, true),
        TruthValue::C => (true, false),
        TruthValue::F => (false, false),
    }
}

fn from_bits(b: (bool, bool)) -> TruthValue {
    match b {
        (true, true) => TruthValue::T,
        (false, true) => TruthValue::U,
        (true, false) => TruthValue::C,
        (false, false) => TruthValue::F,
    }
}

/// Belnap conjunction: componentwise on (lower, upper) truth.
pub fn and4(a: TruthValue, b: TruthValue) -> TruthValue {
    let (a, b) = (bits(a), bits(b));
    from_bits((a.0 && b.0, a.1 && b.1))
}

pub fn or4(a: TruthValue, b: TruthValue) -> TruthValue {
    let (a, b) = (bits(a), bits(b));
    from_bits((a.0 || b.0, a.1 || b.1))
}

/// Negation swaps the roles of the bounds: `¬` is true below iff the
/// argument is false above.
pub fn not4(a: TruthValue) -> TruthValue {
    let a = bits(a);
    from_bits((!a.1, !a.0))
}

pub fn atom4(i: ApproxPair, a: usize) -> TruthValue {
    from_bits((i.lower.contains(a), i.upper.contains(a)))
}

pub fn aggregate_holds(x: AtomSet, g: &AggregateAtom) -> Option<bool> {
    let weights: Vec<Rational> = g
        .term
        .entries
        .iter()
        .filter(|e| e.condition.iter().all(|a| x.contains(a)))
        .map(|e| e.weights[0])
        .collect();
    let value = match g.function {
        AggregateFunction::Sum => weights.iter().fold(Rational::from_integer(0), |s, w| s + w),
        AggregateFunction::Count => Rational::from_integer(weights.len() as i64),
        AggregateFunction::Max => *weights.iter().max()?,
    };
    Some(match g.comparator {
        Comparator::Lt => value < g.bound,
        Comparator::Le => value <= g.bound,
        Comparator::Ge => value >= g.bound,
        Comparator::Gt => value > g.bound,
        Comparator::Eq => value == g.bound,
    })
}

/// Classical truth of a conjunctive body at `x`. Undefined aggregates make
/// both the atom and its negation false.
pub fn body_true(x: AtomSet, rule: &Rule) -> bool {
    let Body::Conj(lits) = &rule.body else {
        panic!("reference evaluator handles literal bodies only")
    };
    lits.iter().all(|l| match l {
        BodyLiteral::Pos(a) => x.contains(*a),
        BodyLiteral::Neg(a) => !x.contains(*a),
        BodyLiteral::PosAgg(g) => aggregate_holds(x, g) == Some(true),
        BodyLiteral::NegAgg(g) => aggregate_holds(x, g) == Some(false),
    })
}

/// Four-valued value of an aggregate-free literal body.
pub fn body4(i: ApproxPair, rule: &Rule) -> TruthValue {
    let Body::Conj(lits) = &rule.body else {
        panic!("reference evaluator handles literal bodies only")
    };
    lits.iter().fold(TruthValue::T, |acc, l| {
        and4(
            acc,
            match l {
                BodyLiteral::Pos(a) => atom4(i, *a),
                BodyLiteral::Neg(a) => not4(atom4(i, *a)),
                _ => panic!("aggregate in four-valued reference"),
            },
        )
    })
}

pub fn heads_where(p: &Program, fires: impl Fn(&Rule) -> bool) -> BTreeSet<AtomSet> {
    p.rules()
        .iter()
        .filter(|r| fires(r))
        .map(|r| r.head)
        .collect()
}

pub fn hd(p: &Program, x: AtomSet) -> BTreeSet<AtomSet> {
    heads_where(p, |r| body_true(x, r))
}

/// Every `z` inside the union of `heads` that meets each head.
pub fn hitting(heads: &BTreeSet<AtomSet>) -> BTreeSet<AtomSet> {
    let union = heads.iter().fold(AtomSet::EMPTY, |u, h| u.union(*h));
    subsets(union)
        .into_iter()
        .filter(|z| heads.iter().all(|h| h.iter().any(|a| z.contains(a))))
        .collect()
}

pub fn ic(p: &Program, x: AtomSet) -> BTreeSet<AtomSet> {
    hitting(&hd(p, x))
}

pub fn interval(x: AtomSet, y: AtomSet) -> Vec<AtomSet> {
    subsets(y).into_iter().filter(|z| x.is_subset(*z)).collect()
}

/// Minimal elements under inclusion.
pub fn minimal(sets: &BTreeSet<AtomSet>) -> BTreeSet<AtomSet> {
    sets.iter()
        .copied()
        .filter(|s| !sets.iter().any(|t| t.is_subset(*s) && t != s))
        .collect()
}

/// Answer sets of an aggregate-free disjunctively normal program: `x` is a
/// minimal model of the reduct that keeps the rules whose negative
/// literals hold in `x`, stripped of those literals.
pub fn answer_sets(p: &Program) -> Vec<AtomSet> {
    let all = subsets(p.atoms());
    all.iter()
        .copied()
        .filter(|&x| {
            let reduct: Vec<(AtomSet, Vec<usize>)> = p
                .rules()
                .iter()
                .filter_map(|r| {
                    let Body::Conj(lits) = &r.body else {
                        panic!("literal bodies only")
                    };
                    let mut pos = Vec::new();
                    for l in lits {
                        match l {
                            BodyLiteral::Pos(a) => pos.push(*a),
                            BodyLiteral::Neg(a) if x.contains(*a) => return None,
                            BodyLiteral::Neg(_) => {}
                            _ => panic!("aggregate in reduct"),
                        }
                    }
                    Some((r.head, pos))
                })
                .collect();
            let model = |z: AtomSet| {
                reduct.iter().all(|(h, pos)| {
                    !pos.iter().all(|a| z.contains(*a)) || h.iter().any(|a| z.contains(a))
                })
            };
            model(x) && !all.iter().any(|&z| z.is_subset(x) && z != x && model(z))
        })
        .collect()
}
