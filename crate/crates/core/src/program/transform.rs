use super::{eval_aggregate, Body, BodyLiteral, Program, Rule};
use crate::error::Error;
use crate::four::{self, Formula, TruthValue};
use crate::lattice::{ApproxPair, AtomSet};

/// Gelfond-Lifschitz style transformation: every negated literal `¬r` is
/// replaced by the constant `(x, y)(¬r)`, leaving a positive program.
pub fn gl_transform(p: &Program, i: ApproxPair) -> Result<Program, Error> {
    let class = p.classify();
    if !class.is_disjunctively_normal() || class.has_aggregates {
        return Err(Error::class(
            "the GL transformation",
            "an aggregate-free disjunctively normal program",
        ));
    }
    if !i.is_consistent() {
        return Err(Error::InconsistentPair);
    }
    p.universe().check_pair(i)?;
    let rules = p
        .rules()
        .iter()
        .map(|rule| {
            let Body::Conj(lits) = &rule.body else {
                unreachable!("classification excludes formula bodies")
            };
            if lits.iter().all(|l| matches!(l, BodyLiteral::Pos(_))) {
                return rule.clone();
            }
            let parts = lits.iter().map(|l| match l {
                BodyLiteral::Pos(a) => Formula::Atom(*a),
                BodyLiteral::Neg(a) => Formula::Const(four::atom_value(i, *a).neg()),
                _ => unreachable!("classification excludes aggregates"),
            });
            Rule {
                head: rule.head,
                body: Body::Formula(Formula::conjunction(parts)),
            }
        })
        .collect();
    Program::new(p.universe().clone(), rules)
}

/// Aggregate elimination at `x`: rules with a false or undefined aggregate
/// are dropped, and each remaining aggregate is replaced by the atoms of its
/// entries whose conditions hold in `x`.
pub fn gz_reduct(p: &Program, x: AtomSet) -> Result<Program, Error> {
    let class = p.classify();
    if !class.is_disjunctively_normal() {
        return Err(Error::class(
            "the GZ-reduct",
            "a disjunctively normal program",
        ));
    }
    if class.negated_aggregates {
        return Err(Error::class("the GZ-reduct", "no negated aggregate atoms"));
    }
    p.universe().check_set(x)?;
    let mut rules = Vec::new();
    'rules: for rule in p.rules() {
        let Body::Conj(lits) = &rule.body else {
            unreachable!("classification excludes formula bodies")
        };
        let mut out = Vec::with_capacity(lits.len());
        for lit in lits {
            match lit {
                BodyLiteral::PosAgg(g) => {
                    if eval_aggregate(x, g).positive() != TruthValue::T {
                        continue 'rules;
                    }
                    let atoms = g
                        .term
                        .entries
                        .iter()
                        .filter(|e| e.condition.is_subset(x))
                        .fold(AtomSet::EMPTY, |acc, e| acc.union(e.condition));
                    out.extend(atoms.iter().map(BodyLiteral::Pos));
                }
                other => out.push(other.clone()),
            }
        }
        rules.push(Rule {
            head: rule.head,
            body: Body::Conj(out),
        });
    }
    Program::new(p.universe().clone(), rules)
}
