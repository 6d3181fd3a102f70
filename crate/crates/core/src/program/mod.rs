//! Propositional disjunctive programs with aggregate bodies: the AST, the
//! text format, classification and the program transformations.

mod aggregate;
mod parser;
mod transform;

use std::borrow::Cow;
use std::fmt;
use std::sync::OnceLock;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::Error;
use crate::four::{self, Formula, TruthValue};
use crate::lattice::{ApproxPair, AtomId, AtomSet, NdSet, Universe};

pub use aggregate::{eval_aggregate, eval_body, eval_multiset, AggregateValue};
pub use parser::parse;
pub use transform::{gl_transform, gz_reduct};

/// Exact weights and bounds.
pub type Rational = Rational64;

/// The set of head-sets of a program's activated rules.
pub type HeadFamily = std::collections::BTreeSet<AtomSet>;

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AggregateFunction {
    Sum,
    Count,
    Max,
}

impl AggregateFunction {
    pub fn keyword(self) -> &'static str {
        match self {
            AggregateFunction::Sum => "sum",
            AggregateFunction::Count => "count",
            AggregateFunction::Max => "max",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Comparator {
    Lt,
    Le,
    Ge,
    Gt,
    Eq,
}

impl Comparator {
    pub const ALL: [Comparator; 5] = [
        Comparator::Lt,
        Comparator::Le,
        Comparator::Ge,
        Comparator::Gt,
        Comparator::Eq,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Comparator::Lt => "<",
            Comparator::Le => "<=",
            Comparator::Ge => ">=",
            Comparator::Gt => ">",
            Comparator::Eq => "=",
        }
    }

    pub fn holds(self, lhs: Rational, rhs: Rational) -> bool {
        match self {
            Comparator::Lt => lhs < rhs,
            Comparator::Le => lhs <= rhs,
            Comparator::Ge => lhs >= rhs,
            Comparator::Gt => lhs > rhs,
            Comparator::Eq => lhs == rhs,
        }
    }
}

/// One `[t̄ : Conj]` element of a set term.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SetEntry {
    pub weights: Vec<Rational>,
    /// Non-empty conjunction of atoms.
    pub condition: AtomSet,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SetTerm {
    pub entries: Vec<SetEntry>,
}

impl SetTerm {
    pub fn atoms(&self) -> AtomSet {
        self.entries
            .iter()
            .fold(AtomSet::EMPTY, |acc, e| acc.union(e.condition))
    }
}

/// `f(S) ∗ w`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AggregateAtom {
    pub function: AggregateFunction,
    pub term: SetTerm,
    pub comparator: Comparator,
    pub bound: Rational,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum BodyLiteral {
    Pos(AtomId),
    Neg(AtomId),
    PosAgg(AggregateAtom),
    NegAgg(AggregateAtom),
}

impl BodyLiteral {
    pub fn is_aggregate(&self) -> bool {
        matches!(self, BodyLiteral::PosAgg(_) | BodyLiteral::NegAgg(_))
    }

    pub fn atoms(&self) -> AtomSet {
        match self {
            BodyLiteral::Pos(a) | BodyLiteral::Neg(a) => AtomSet::singleton(*a),
            BodyLiteral::PosAgg(g) | BodyLiteral::NegAgg(g) => g.term.atoms(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Body {
    /// A conjunction of literals; empty means `T`.
    Conj(Vec<BodyLiteral>),
    /// An aggregate-free formula.
    Formula(Formula),
}

impl Body {
    pub fn has_aggregates(&self) -> bool {
        match self {
            Body::Conj(lits) => lits.iter().any(BodyLiteral::is_aggregate),
            Body::Formula(_) => false,
        }
    }

    pub fn has_negated_aggregates(&self) -> bool {
        match self {
            Body::Conj(lits) => lits.iter().any(|l| matches!(l, BodyLiteral::NegAgg(_))),
            Body::Formula(_) => false,
        }
    }

    /// The body as a formula, if it is aggregate-free.
    pub fn to_formula(&self) -> Option<Formula> {
        match self {
            Body::Formula(f) => Some(f.clone()),
            Body::Conj(lits) => lits
                .iter()
                .map(|l| match l {
                    BodyLiteral::Pos(a) => Some(Formula::Atom(*a)),
                    BodyLiteral::Neg(a) => Some(Formula::not(Formula::Atom(*a))),
                    _ => None,
                })
                .collect::<Option<Vec<_>>>()
                .map(Formula::conjunction),
        }
    }

    /// Four-valued value of an aggregate-free body.
    pub fn eval4(&self, i: ApproxPair) -> Result<TruthValue, Error> {
        match self {
            Body::Formula(f) => Ok(four::eval(i, f)),
            Body::Conj(lits) => lits.iter().try_fold(TruthValue::T, |acc, l| {
                let v = match l {
                    BodyLiteral::Pos(a) => four::atom_value(i, *a),
                    BodyLiteral::Neg(a) => four::atom_value(i, *a).neg(),
                    _ => {
                        return Err(Error::class(
                            "four-valued body evaluation",
                            "an aggregate-free program",
                        ))
                    }
                };
                Ok(acc.and(v))
            }),
        }
    }

    pub fn atoms(&self) -> AtomSet {
        match self {
            Body::Formula(f) => f.atoms(),
            Body::Conj(lits) => lits
                .iter()
                .fold(AtomSet::EMPTY, |acc, l| acc.union(l.atoms())),
        }
    }
}

/// `⋁head ← body`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rule {
    pub head: AtomSet,
    pub body: Body,
}

impl Rule {
    pub fn atoms(&self) -> AtomSet {
        self.head.union(self.body.atoms())
    }

    pub fn is_conjunctive(&self) -> bool {
        matches!(self.body, Body::Conj(_))
    }
}

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProgramShape {
    /// Atomic heads, conjunctive bodies.
    Normal,
    /// Disjunctive heads, conjunctive bodies.
    DisjunctivelyNormal,
    /// At least one body is a general formula.
    General,
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Classification {
    pub shape: ProgramShape,
    pub has_aggregates: bool,
    pub negated_aggregates: bool,
}

impl Classification {
    pub fn is_normal(&self) -> bool {
        self.shape == ProgramShape::Normal
    }

    pub fn is_disjunctively_normal(&self) -> bool {
        self.shape <= ProgramShape::DisjunctivelyNormal
    }
}

// Memo tables are only kept for universes small enough to enumerate.
const MEMO_MAX_ATOMS: usize = 16;

#[derive(Clone, Default)]
struct Memo {
    hd: Vec<OnceLock<HeadFamily>>,
    ic: Vec<OnceLock<NdSet>>,
}

impl Memo {
    fn for_universe(n: usize) -> Self {
        if n > MEMO_MAX_ATOMS {
            return Memo::default();
        }
        let size = 1usize << n;
        Memo {
            hd: (0..size).map(|_| OnceLock::new()).collect(),
            ic: (0..size).map(|_| OnceLock::new()).collect(),
        }
    }
}

/// A finite set of rules over a fixed universe.
#[derive(Clone)]
pub struct Program {
    rules: Vec<Rule>,
    universe: Universe,
    memo: Memo,
}

impl PartialEq for Program {
    fn eq(&self, other: &Self) -> bool {
        self.rules == other.rules && self.universe == other.universe
    }
}

impl Eq for Program {}

impl fmt::Debug for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Program")
            .field("universe", &self.universe.names())
            .field("rules", &self.rules)
            .finish()
    }
}

impl Program {
    /// Builds a program over an explicit universe, which may contain atoms
    /// that no rule mentions.
    pub fn new(universe: Universe, rules: Vec<Rule>) -> Result<Self, Error> {
        let top = universe.top();
        for rule in &rules {
            if rule.head.is_empty() {
                return Err(Error::EmptyHead);
            }
            if !rule.atoms().is_subset(top) {
                return Err(Error::UniverseMismatch);
            }
            if let Body::Conj(lits) = &rule.body {
                for lit in lits {
                    if let BodyLiteral::PosAgg(g) | BodyLiteral::NegAgg(g) = lit {
                        if g.term
                            .entries
                            .iter()
                            .any(|e| e.condition.is_empty() || e.weights.is_empty())
                        {
                            return Err(Error::class(
                                "a set term",
                                "non-empty weight lists and conditions",
                            ));
                        }
                    }
                }
            }
        }
        let memo = Memo::for_universe(universe.len());
        Ok(Program {
            rules,
            universe,
            memo,
        })
    }

    pub fn empty() -> Self {
        Program::new(Universe::default(), Vec::new()).expect("empty program is valid")
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    /// `𝒜_P`.
    pub fn atoms(&self) -> AtomSet {
        self.universe.top()
    }

    pub fn classify(&self) -> Classification {
        let shape = self
            .rules
            .iter()
            .map(|r| match (&r.body, r.head.len()) {
                (Body::Formula(_), _) => ProgramShape::General,
                (Body::Conj(_), 1) => ProgramShape::Normal,
                (Body::Conj(_), _) => ProgramShape::DisjunctivelyNormal,
            })
            .max()
            .unwrap_or(ProgramShape::Normal);
        Classification {
            shape,
            has_aggregates: self.rules.iter().any(|r| r.body.has_aggregates()),
            negated_aggregates: self.rules.iter().any(|r| r.body.has_negated_aggregates()),
        }
    }

    pub fn has_aggregates(&self) -> bool {
        self.rules.iter().any(|r| r.body.has_aggregates())
    }

    pub fn rule_display<'a>(&'a self, rule: &'a Rule) -> RuleDisplay<'a> {
        RuleDisplay {
            rule,
            universe: &self.universe,
        }
    }

    pub(crate) fn memo_hd(
        &self,
        x: AtomSet,
        compute: impl FnOnce() -> HeadFamily,
    ) -> Cow<'_, HeadFamily> {
        match self.memo.hd.get(x.bits() as usize) {
            Some(cell) => Cow::Borrowed(cell.get_or_init(compute)),
            None => Cow::Owned(compute()),
        }
    }

    pub(crate) fn memo_ic(&self, x: AtomSet, compute: impl FnOnce() -> NdSet) -> Cow<'_, NdSet> {
        match self.memo.ic.get(x.bits() as usize) {
            Some(cell) => Cow::Borrowed(cell.get_or_init(compute)),
            None => Cow::Owned(compute()),
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if *r.denom() == 1 {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Renders a rational the way the parser reads it back.
pub fn format_rational(r: &Rational) -> String {
    struct R<'a>(&'a Rational);
    impl fmt::Display for R<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write_rational(f, self.0)
        }
    }
    R(r).to_string()
}

/// Text rendering of a rule, in the input syntax.
pub struct RuleDisplay<'a> {
    rule: &'a Rule,
    universe: &'a Universe,
}

impl RuleDisplay<'_> {
    fn write_conj(&self, f: &mut fmt::Formatter<'_>, atoms: AtomSet) -> fmt::Result {
        let names = self.universe.names_of(atoms);
        f.write_str(&names.join("&"))
    }

    fn write_aggregate(&self, f: &mut fmt::Formatter<'_>, g: &AggregateAtom) -> fmt::Result {
        write!(f, "#{}{{", g.function.keyword())?;
        for (i, entry) in g.term.entries.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, w) in entry.weights.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write_rational(f, w)?;
            }
            f.write_str(":")?;
            self.write_conj(f, entry.condition)?;
        }
        write!(f, "}} {} ", g.comparator.symbol())?;
        write_rational(f, &g.bound)
    }

    fn write_formula(&self, f: &mut fmt::Formatter<'_>, phi: &Formula, parent: u8) -> fmt::Result {
        const OR: u8 = 1;
        const AND: u8 = 2;
        const UNARY: u8 = 3;
        match phi {
            Formula::Atom(a) => f.write_str(self.universe.name(*a)),
            Formula::Const(v) => f.write_str(const_keyword(*v)),
            Formula::Not(g) => {
                f.write_str("not ")?;
                self.write_formula(f, g, UNARY)
            }
            Formula::And(a, b) => {
                let paren = parent > AND;
                if paren {
                    f.write_str("(")?;
                }
                self.write_formula(f, a, AND)?;
                f.write_str(" & ")?;
                self.write_formula(f, b, UNARY)?;
                if paren {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Formula::Or(a, b) => {
                let paren = parent > OR;
                if paren {
                    f.write_str("(")?;
                }
                self.write_formula(f, a, OR)?;
                f.write_str(" | ")?;
                self.write_formula(f, b, AND)?;
                if paren {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

pub(crate) fn const_keyword(v: TruthValue) -> &'static str {
    match v {
        TruthValue::T => "#true",
        TruthValue::F => "#false",
        TruthValue::U => "#unknown",
        TruthValue::C => "#contradictory",
    }
}

impl fmt::Display for RuleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.universe.names_of(self.rule.head).join(" | "))?;
        f.write_str(" :- ")?;
        match &self.rule.body {
            Body::Conj(lits) => {
                for (i, lit) in lits.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    match lit {
                        BodyLiteral::Pos(a) => f.write_str(self.universe.name(*a))?,
                        BodyLiteral::Neg(a) => write!(f, "not {}", self.universe.name(*a))?,
                        BodyLiteral::PosAgg(g) => self.write_aggregate(f, g)?,
                        BodyLiteral::NegAgg(g) => {
                            f.write_str("not ")?;
                            self.write_aggregate(f, g)?
                        }
                    }
                }
            }
            // A bare literal would read back as a one-element conjunction.
            Body::Formula(phi @ (Formula::Atom(_) | Formula::Not(_))) => {
                f.write_str("(")?;
                self.write_formula(f, phi, 1)?;
                f.write_str(")")?;
            }
            Body::Formula(phi) => self.write_formula(f, phi, 1)?,
        }
        f.write_str(".")
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{}", self.rule_display(rule))?;
        }
        Ok(())
    }
}

/// JSON view of a program.
#[derive(Serialize, Debug)]
pub struct ProgramDocument {
    pub universe: Vec<String>,
    pub classification: Classification,
    pub rules: Vec<RuleDocument>,
}

#[derive(Serialize, Debug)]
pub struct RuleDocument {
    pub head: Vec<String>,
    pub body: String,
    pub text: String,
}

impl Program {
    pub fn to_document(&self) -> ProgramDocument {
        ProgramDocument {
            universe: self.universe.names().to_vec(),
            classification: self.classify(),
            rules: self
                .rules
                .iter()
                .map(|r| {
                    let text = self.rule_display(r).to_string();
                    let body = text
                        .split_once(" :- ")
                        .map(|(_, b)| b.trim_end_matches('.').to_string())
                        .unwrap_or_default();
                    RuleDocument {
                        head: self.universe.names_of(r.head),
                        body,
                        text,
                    }
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("program document serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_examples() {
        let c = parse("q :- not p.\np :- p.").unwrap().classify();
        assert_eq!(c.shape, ProgramShape::Normal);
        assert!(!c.has_aggregates);
        let c = parse("p | q :- not q.").unwrap().classify();
        assert_eq!(c.shape, ProgramShape::DisjunctivelyNormal);
        let c = parse("p :- not #sum{1:q} > 0.").unwrap().classify();
        assert!(c.has_aggregates && c.negated_aggregates);
        let c = parse("p :- q | r.").unwrap().classify();
        assert_eq!(c.shape, ProgramShape::General);
        assert_eq!(Program::empty().classify().shape, ProgramShape::Normal);
    }

    #[test]
    fn printing_is_canonical() {
        let p = parse("p | q :- not q.\np :- #sum{1:p&q; 2,3:r} >= 1/2.\nr :- .\ns :- (a | b) & not c.\nt :- (a).")
            .unwrap();
        assert_eq!(
            p.to_string(),
            "p | q :- not q.\n\
             p :- #sum{1:p&q; 2,3:r} >= 1/2.\n\
             r :- .\n\
             s :- (a | b) & not c.\n\
             t :- (a).\n"
        );
    }

    #[test]
    fn json_document_lists_rules() {
        let p = parse("p | q :- not q.").unwrap();
        let v: serde_json::Value = serde_json::from_str(&p.to_json()).unwrap();
        assert_eq!(v["universe"], serde_json::json!(["p", "q"]));
        assert_eq!(v["rules"][0]["head"], serde_json::json!(["p", "q"]));
        assert_eq!(v["rules"][0]["body"], "not q");
        assert_eq!(v["classification"]["shape"], "disjunctively_normal");
    }

    #[test]
    fn explicit_universe_is_validated() {
        let u = Universe::new(["p"]).unwrap();
        let bad = Rule {
            head: AtomSet::singleton(3),
            body: Body::Conj(vec![]),
        };
        assert!(matches!(
            Program::new(u.clone(), vec![bad]),
            Err(Error::UniverseMismatch)
        ));
        let empty_head = Rule {
            head: AtomSet::EMPTY,
            body: Body::Conj(vec![]),
        };
        assert!(matches!(
            Program::new(u, vec![empty_head]),
            Err(Error::EmptyHead)
        ));
    }
}
