//! Fixpoint semantics by exhaustive enumeration: fixpoints, stable
//! fixpoints, here-and-there pairs, semi-equilibrium models, the
//! deterministic Kripke-Kleene and well-founded fixpoints, three-valued
//! stable models and GZ answer sets.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::four::{self, Formula};
use crate::lattice::{
    difference, enumerate_consistent_pairs, enumerate_interval, smyth_below, subsets, ApproxPair,
    AtomSet, NdPair, NdSet,
};
use crate::operators::{dmt_det, Approximator, OperatorKind};
use crate::program::{gl_transform, gz_reduct, Program};

/// Memoizing evaluator of one operator on one program.
pub struct Solver<'a, A: Approximator + ?Sized = OperatorKind> {
    op: &'a A,
    program: &'a Program,
    memo: RefCell<HashMap<ApproxPair, Rc<NdPair>>>,
}

impl<'a, A: Approximator + ?Sized> Solver<'a, A> {
    pub fn new(op: &'a A, program: &'a Program, max_atoms: usize) -> Result<Self, Error> {
        program.universe().check_cap(max_atoms)?;
        op.check_program(program)?;
        Ok(Solver {
            op,
            program,
            memo: RefCell::new(HashMap::new()),
        })
    }

    pub fn program(&self) -> &Program {
        self.program
    }

    pub fn apply(&self, i: ApproxPair) -> Result<Rc<NdPair>, Error> {
        if let Some(hit) = self.memo.borrow().get(&i) {
            return Ok(Rc::clone(hit));
        }
        let value = Rc::new(self.op.apply(self.program, i)?);
        self.memo.borrow_mut().insert(i, Rc::clone(&value));
        Ok(value)
    }

    fn top(&self) -> AtomSet {
        self.program.atoms()
    }

    fn pairs(&self) -> impl Iterator<Item = ApproxPair> {
        let top = self.top();
        subsets(top).flat_map(move |x| {
            enumerate_interval(x, top)
                .expect("x is below the top element")
                .map(move |y| ApproxPair::new(x, y))
        })
    }

    /// Candidate lower bounds for a fixed upper bound `y`.
    fn lower_candidates(&self, y: AtomSet) -> Vec<AtomSet> {
        if self.op.accepts_inconsistent() {
            subsets(self.top()).collect()
        } else {
            subsets(y).collect()
        }
    }

    /// Candidate upper bounds for a fixed lower bound `x`.
    fn upper_candidates(&self, x: AtomSet) -> Vec<AtomSet> {
        if self.op.accepts_inconsistent() {
            subsets(self.top()).collect()
        } else {
            enumerate_interval(x, self.top())
                .expect("x is below the top element")
                .collect()
        }
    }

    /// Consistent pairs with `x ∈ 𝒪_l(x, y)` and `y ∈ 𝒪_u(x, y)`.
    pub fn fixpoints(&self) -> Result<Vec<ApproxPair>, Error> {
        let mut out = Vec::new();
        for i in self.pairs() {
            let r = self.apply(i)?;
            if r.contains(i) {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// `C(𝒪_l)(y)`: the ⊆-minimal fixpoints of `λx. 𝒪_l(x, y)`.
    pub fn complete_lower_stable(&self, y: AtomSet) -> Result<NdSet, Error> {
        self.program.universe().check_set(y)?;
        let mut fixed = Vec::new();
        for x in self.lower_candidates(y) {
            if self.apply(ApproxPair::new(x, y))?.lower.contains(&x) {
                fixed.push(x);
            }
        }
        Ok(minimal_sets(&fixed))
    }

    /// `C(𝒪_u)(x)`: the ⊆-minimal fixpoints of `λy. 𝒪_u(x, y)`.
    pub fn complete_upper_stable(&self, x: AtomSet) -> Result<NdSet, Error> {
        self.program.universe().check_set(x)?;
        let mut fixed = Vec::new();
        for y in self.upper_candidates(x) {
            if self.apply(ApproxPair::new(x, y))?.upper.contains(&y) {
                fixed.push(y);
            }
        }
        Ok(minimal_sets(&fixed))
    }

    /// The ⊆-minimal sets `x` with `𝒪_l(x, y) ⪯ˢ {x}`.
    pub fn minimal_lower_prefixpoints(&self, y: AtomSet) -> Result<NdSet, Error> {
        self.program.universe().check_set(y)?;
        let mut pre = Vec::new();
        for x in self.lower_candidates(y) {
            if smyth_below(&self.apply(ApproxPair::new(x, y))?.lower, x) {
                pre.push(x);
            }
        }
        Ok(minimal_sets(&pre))
    }

    /// Consistent `(x, y)` with `x ∈ C(𝒪_l)(y)` and `y ∈ C(𝒪_u)(x)`.
    pub fn stable(&self) -> Result<Vec<ApproxPair>, Error> {
        let mut upper_cache: BTreeMap<AtomSet, NdSet> = BTreeMap::new();
        let mut out = Vec::new();
        for y in subsets(self.top()) {
            for x in self.complete_lower_stable(y)? {
                if !x.is_subset(y) {
                    continue;
                }
                let ups = match upper_cache.get(&x) {
                    Some(u) => u,
                    None => {
                        let u = self.complete_upper_stable(x)?;
                        upper_cache.entry(x).or_insert(u)
                    }
                };
                if ups.contains(&y) {
                    out.push(ApproxPair::new(x, y));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn total_stable(&self) -> Result<Vec<AtomSet>, Error> {
        Ok(self
            .stable()?
            .into_iter()
            .filter(ApproxPair::is_total)
            .map(|i| i.lower)
            .collect())
    }

    /// Consistent `(x, y)` with `𝒪(y) ⪯ˢ {y}` and `𝒪_l(x, y) ⪯ˢ {x}`,
    /// where `𝒪(y)` is read off the operator at `(y, y)`.
    pub fn ht_pairs(&self) -> Result<Vec<ApproxPair>, Error> {
        let mut out = Vec::new();
        for y in subsets(self.top()) {
            if !smyth_below(&self.apply(ApproxPair::total(y))?.lower, y) {
                continue;
            }
            for x in subsets(y) {
                if smyth_below(&self.apply(ApproxPair::new(x, y))?.lower, x) {
                    out.push(ApproxPair::new(x, y));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Semi-equilibrium models: gap-minimal among the ≤ₜ-minimal HT-pairs.
    pub fn seq(&self) -> Result<Vec<ApproxPair>, Error> {
        Ok(gap_minimal(&min_t(&self.ht_pairs()?)))
    }

    /// The ≤ᵢ-maximal ≤ₜ-minimal HT-pairs, which needs no difference
    /// operation on the lattice.
    pub fn seq_no_difference(&self) -> Result<Vec<ApproxPair>, Error> {
        Ok(max_i(&min_t(&self.ht_pairs()?)))
    }
}

/// The ⊆-minimal members of `sets`.
pub fn minimal_sets(sets: &[AtomSet]) -> NdSet {
    sets.iter()
        .copied()
        .filter(|s| !sets.iter().any(|o| o.is_strict_subset(*s)))
        .collect()
}

/// The ≤ₜ-minimal members of `pairs`.
pub fn min_t(pairs: &[ApproxPair]) -> Vec<ApproxPair> {
    let mut out: Vec<ApproxPair> = pairs
        .iter()
        .copied()
        .filter(|p| !pairs.iter().any(|o| o != p && o.leq_t(p)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// The ≤ᵢ-maximal members of `pairs`.
pub fn max_i(pairs: &[ApproxPair]) -> Vec<ApproxPair> {
    let mut out: Vec<ApproxPair> = pairs
        .iter()
        .copied()
        .filter(|p| !pairs.iter().any(|o| o != p && p.leq_i(o)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Pairs whose gap `y ∖ x` is not a strict superset of another pair's gap.
pub fn gap_minimal(pairs: &[ApproxPair]) -> Vec<ApproxPair> {
    let mut out: Vec<ApproxPair> = pairs
        .iter()
        .copied()
        .filter(|p| {
            let g = difference(p.upper, p.lower);
            !pairs
                .iter()
                .any(|o| difference(o.upper, o.lower).is_strict_subset(g))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Kripke-Kleene fixpoint of the deterministic operator, iterated from
/// `(∅, 𝒜_P)`.
pub fn kk_fixpoint_det(p: &Program, max_atoms: usize) -> Result<ApproxPair, Error> {
    p.universe().check_cap(max_atoms)?;
    let mut i = ApproxPair::new(AtomSet::EMPTY, p.atoms());
    loop {
        let next = dmt_det(p, i)?;
        if next == i {
            return Ok(i);
        }
        i = next;
    }
}

/// Least fixpoint of `f` among the sets of `domain`, if one exists.
fn least_fixpoint<I>(
    domain: I,
    f: impl Fn(AtomSet) -> Result<AtomSet, Error>,
) -> Result<Option<AtomSet>, Error>
where
    I: IntoIterator<Item = AtomSet>,
{
    let mut fixed = Vec::new();
    for z in domain {
        if f(z)? == z {
            fixed.push(z);
        }
    }
    Ok(fixed
        .iter()
        .copied()
        .find(|z| fixed.iter().all(|o| z.is_subset(*o))))
}

/// Consistent `(x, y)` where `x` is the least fixpoint of
/// `λz. dmt_det(z, y).lower` below `y` and `y` the least fixpoint of
/// `λz. dmt_det(x, z).upper` above `x`.
pub fn det_stable_pairs(p: &Program, max_atoms: usize) -> Result<Vec<ApproxPair>, Error> {
    p.universe().check_cap(max_atoms)?;
    OperatorKind::DmtDet.check_program(p)?;
    let top = p.atoms();
    let mut out = Vec::new();
    for i in enumerate_consistent_pairs(p.universe(), max_atoms)? {
        let (x, y) = (i.lower, i.upper);
        let lower = least_fixpoint(subsets(y), |z| Ok(dmt_det(p, ApproxPair::new(z, y))?.lower))?;
        if lower != Some(x) {
            continue;
        }
        let upper = least_fixpoint(enumerate_interval(x, top)?, |z| {
            Ok(dmt_det(p, ApproxPair::new(x, z))?.upper)
        })?;
        if upper == Some(y) {
            out.push(i);
        }
    }
    out.sort();
    Ok(out)
}

/// The ≤ᵢ-least deterministic stable pair(s).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WellFounded {
    /// All ≤ᵢ-minimal deterministic stable pairs.
    pub models: Vec<ApproxPair>,
    /// Whether exactly one minimal pair exists and it is below all others.
    pub unique: bool,
}

pub fn wf_fixpoint_det(p: &Program, max_atoms: usize) -> Result<WellFounded, Error> {
    let stable = det_stable_pairs(p, max_atoms)?;
    let models: Vec<ApproxPair> = stable
        .iter()
        .copied()
        .filter(|s| !stable.iter().any(|o| o != s && o.leq_i(s)))
        .collect();
    let unique = models.len() == 1 && stable.iter().all(|s| models[0].leq_i(s));
    Ok(WellFounded { models, unique })
}

fn require_plain(p: &Program, operation: &'static str) -> Result<(), Error> {
    let class = p.classify();
    if !class.is_disjunctively_normal() || class.has_aggregates {
        return Err(Error::class(
            operation,
            "an aggregate-free disjunctively normal program",
        ));
    }
    Ok(())
}

fn rule_formulas(p: &Program) -> Vec<(Formula, AtomSet)> {
    p.rules()
        .iter()
        .map(|r| (r.body.to_formula().expect("aggregate-free body"), r.head))
        .collect()
}

/// `HT(𝒫)`: consistent pairs satisfying every rule here-and-there.
pub fn ht_models_program(p: &Program, max_atoms: usize) -> Result<Vec<ApproxPair>, Error> {
    require_plain(p, "HT-models")?;
    let rules = rule_formulas(p);
    let mut out = Vec::new();
    'pairs: for i in enumerate_consistent_pairs(p.universe(), max_atoms)? {
        for (body, head) in &rules {
            if !four::ht_satisfies_rule(i, body, *head)? {
                continue 'pairs;
            }
        }
        out.push(i);
    }
    Ok(out)
}

/// Whether `i` is a three-valued model: every rule has
/// `i(head) ≥ₜ i(body)`.
pub fn is_three_valued_model(p: &Program, i: ApproxPair) -> Result<bool, Error> {
    for r in p.rules() {
        let body = r.body.eval4(i)?;
        let head = four::eval(i, &Formula::head(r.head));
        if !body.leq_t(head) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `i` is a ≤ₜ-minimal model of the GL transform of `p` at `i`.
pub fn is_three_valued_stable(p: &Program, i: ApproxPair) -> Result<bool, Error> {
    let reduct = gl_transform(p, i)?;
    if !is_three_valued_model(&reduct, i)? {
        return Ok(false);
    }
    // Consistent pairs ≤ₜ-below (x, y): lower ⊆ x, upper ⊆ y.
    for w in subsets(i.lower) {
        for z in enumerate_interval(w, i.upper)? {
            let j = ApproxPair::new(w, z);
            if j != i && is_three_valued_model(&reduct, j)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Consistent pairs that are ≤ₜ-minimal models of their own GL transform.
pub fn three_valued_stable(p: &Program, max_atoms: usize) -> Result<Vec<ApproxPair>, Error> {
    require_plain(p, "three-valued stable models")?;
    let mut out = Vec::new();
    for i in enumerate_consistent_pairs(p.universe(), max_atoms)? {
        if is_three_valued_stable(p, i)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// Sets `x` such that `(x, x)` is a three-valued stable model of the
/// GZ-reduct of `p` at `x`.
pub fn gz_answer_sets(p: &Program, max_atoms: usize) -> Result<Vec<AtomSet>, Error> {
    p.universe().check_cap(max_atoms)?;
    let mut out = Vec::new();
    for x in subsets(p.atoms()) {
        let reduct = gz_reduct(p, x)?;
        if is_three_valued_stable(&reduct, ApproxPair::total(x))? {
            out.push(x);
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SemanticsKind {
    Fixpoints,
    Stable,
    TotalStable,
    Kk,
    Wf,
    Ht,
    HtModels,
    Seq,
    SeqApprox,
    ThreeValuedStable,
    GzAnswerSets,
}

impl SemanticsKind {
    pub const ALL: [SemanticsKind; 11] = [
        SemanticsKind::Fixpoints,
        SemanticsKind::Stable,
        SemanticsKind::TotalStable,
        SemanticsKind::Kk,
        SemanticsKind::Wf,
        SemanticsKind::Ht,
        SemanticsKind::HtModels,
        SemanticsKind::Seq,
        SemanticsKind::SeqApprox,
        SemanticsKind::ThreeValuedStable,
        SemanticsKind::GzAnswerSets,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemanticsKind::Fixpoints => "fixpoints",
            SemanticsKind::Stable => "stable",
            SemanticsKind::TotalStable => "total-stable",
            SemanticsKind::Kk => "kk",
            SemanticsKind::Wf => "wf",
            SemanticsKind::Ht => "ht",
            SemanticsKind::HtModels => "ht-models",
            SemanticsKind::Seq => "seq",
            SemanticsKind::SeqApprox => "seq-approx",
            SemanticsKind::ThreeValuedStable => "three-valued-stable",
            SemanticsKind::GzAnswerSets => "gz-answer-sets",
        }
    }

    /// Whether the semantics is parameterized by an operator.
    pub fn uses_operator(self) -> bool {
        matches!(
            self,
            SemanticsKind::Fixpoints
                | SemanticsKind::Stable
                | SemanticsKind::TotalStable
                | SemanticsKind::Ht
                | SemanticsKind::Seq
                | SemanticsKind::SeqApprox
        )
    }
}

impl fmt::Display for SemanticsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemanticsKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SemanticsKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown semantics `{s}`"))
    }
}

/// Models of one semantics together with what produced them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemanticsResult {
    pub kind: SemanticsKind,
    /// Sorted; total models are reported as `(x, x)`.
    pub models: Vec<ApproxPair>,
    pub operator: Option<OperatorKind>,
    pub program_hash: String,
    pub universe: Vec<String>,
    pub warnings: Vec<String>,
}

/// Hex SHA-256 of the universe and the canonical program text.
pub fn program_hash(p: &Program) -> String {
    let mut h = Sha256::new();
    h.update(p.universe().names().join(" ").as_bytes());
    h.update(b"\n");
    h.update(p.to_string().as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Computes `kind` for `p`. `operator` is required exactly when the
/// semantics uses one.
pub fn run_semantics(
    kind: SemanticsKind,
    operator: Option<OperatorKind>,
    p: &Program,
    max_atoms: usize,
) -> Result<SemanticsResult, Error> {
    p.universe().check_cap(max_atoms)?;
    let operator = if kind.uses_operator() {
        Some(operator.ok_or(Error::class("this semantics", "an operator (--operator)"))?)
    } else {
        None
    };
    let mut warnings = Vec::new();
    let totals = |xs: Vec<AtomSet>| xs.into_iter().map(ApproxPair::total).collect::<Vec<_>>();
    let mut models = match kind {
        SemanticsKind::Kk => vec![kk_fixpoint_det(p, max_atoms)?],
        SemanticsKind::Wf => {
            let wf = wf_fixpoint_det(p, max_atoms)?;
            if !wf.unique {
                warnings.push(format!(
                    "no unique least stable pair: {} minimal candidates",
                    wf.models.len()
                ));
            }
            wf.models
        }
        SemanticsKind::HtModels => ht_models_program(p, max_atoms)?,
        SemanticsKind::ThreeValuedStable => three_valued_stable(p, max_atoms)?,
        SemanticsKind::GzAnswerSets => totals(gz_answer_sets(p, max_atoms)?),
        _ => {
            let op = operator.expect("checked above");
            let solver = Solver::new(&op, p, max_atoms)?;
            match kind {
                SemanticsKind::Fixpoints => solver.fixpoints()?,
                SemanticsKind::Stable => solver.stable()?,
                SemanticsKind::TotalStable => totals(solver.total_stable()?),
                SemanticsKind::Ht => solver.ht_pairs()?,
                SemanticsKind::Seq => solver.seq()?,
                SemanticsKind::SeqApprox => solver.seq_no_difference()?,
                _ => unreachable!("operator-free kinds handled above"),
            }
        }
    };
    models.sort();
    Ok(SemanticsResult {
        kind,
        models,
        operator,
        program_hash: program_hash(p),
        universe: p.universe().names().to_vec(),
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DEFAULT_MAX_ATOMS;
    use crate::program::parse;

    const EXAMPLE2: &str = "p | q :- not q.";
    const EXAMPLE3: &str = "q :- not p.\np :- p.";
    const SEQ_EXAMPLE: &str = "p :- not p.\ns | q :- not s.\ns | q :- not q.";
    const DMT_DET: &str = "p :- #sum{1:p} > 0.\np :- #sum{1:p} < 1.";
    const GZ_EXAMPLE: &str = "p :- #sum{1:p&q} > 0.\np :- #sum{1:q} > 0.\nq :- #sum{1:s} < 1.";

    struct Fx {
        p: Program,
    }

    impl Fx {
        fn new(text: &str) -> Self {
            Fx {
                p: parse(text).unwrap(),
            }
        }
        fn set(&self, names: &[&str]) -> AtomSet {
            self.p.universe().set_of(names.iter().copied()).unwrap()
        }
        fn pair(&self, x: &[&str], y: &[&str]) -> ApproxPair {
            ApproxPair::new(self.set(x), self.set(y))
        }
        fn solver(&self, k: OperatorKind) -> Solver<'_> {
            static KINDS: [OperatorKind; 5] = OperatorKind::ALL;
            let op = KINDS.iter().find(|o| **o == k).unwrap();
            Solver::new(op, &self.p, DEFAULT_MAX_ATOMS).unwrap()
        }
    }

    #[test]
    fn fixpoint_examples() {
        let f = Fx::new(EXAMPLE2);
        let fx = f.solver(OperatorKind::Ic).fixpoints().unwrap();
        assert!(fx.contains(&f.pair(&[], &["p", "q"])));
        assert!(fx.contains(&f.pair(&["p"], &["p"])));
        let empty = Program::empty();
        let s = Solver::new(&OperatorKind::Ic, &empty, DEFAULT_MAX_ATOMS).unwrap();
        assert_eq!(s.fixpoints().unwrap(), vec![ApproxPair::default()]);
    }

    #[test]
    fn complete_stable_examples() {
        let f = Fx::new(EXAMPLE2);
        let s = f.solver(OperatorKind::Ic);
        let nd = |sets: &[&[&str]]| sets.iter().map(|x| f.set(x)).collect::<NdSet>();
        assert_eq!(
            s.complete_lower_stable(f.set(&["p"])).unwrap(),
            nd(&[&["p"], &["q"]])
        );
        assert_eq!(s.complete_lower_stable(f.set(&["q"])).unwrap(), nd(&[&[]]));
        assert_eq!(
            s.complete_upper_stable(f.set(&["p"])).unwrap(),
            nd(&[&["p"], &["q"]])
        );
        let empty = Program::empty();
        let s = Solver::new(&OperatorKind::Ic, &empty, DEFAULT_MAX_ATOMS).unwrap();
        assert_eq!(s.complete_lower_stable(AtomSet::EMPTY).unwrap(), nd(&[&[]]));
        assert_eq!(s.complete_upper_stable(AtomSet::EMPTY).unwrap(), nd(&[&[]]));
    }

    #[test]
    fn stable_examples() {
        let f = Fx::new(EXAMPLE2);
        let st = f.solver(OperatorKind::Ic).stable().unwrap();
        assert_eq!(st, vec![f.pair(&[], &["q"]), f.pair(&["p"], &["p"])]);
        assert_eq!(
            f.solver(OperatorKind::Ic).total_stable().unwrap(),
            vec![f.set(&["p"])]
        );
        assert!(f
            .solver(OperatorKind::Dmt)
            .stable()
            .unwrap()
            .contains(&f.pair(&["p"], &["p"])));
        let f = Fx::new("p.");
        assert_eq!(
            f.solver(OperatorKind::Ic).stable().unwrap(),
            vec![f.pair(&["p"], &["p"])]
        );
    }

    #[test]
    fn aggregate_total_stable() {
        let f = Fx::new(DMT_DET);
        assert!(f
            .solver(OperatorKind::Gz)
            .total_stable()
            .unwrap()
            .is_empty());
        assert_eq!(
            f.solver(OperatorKind::DmtDet).total_stable().unwrap(),
            vec![f.set(&["p"])]
        );
    }

    #[test]
    fn kk_and_wf() {
        let f = Fx::new(EXAMPLE3);
        assert_eq!(kk_fixpoint_det(&f.p, 12).unwrap(), f.pair(&[], &["p", "q"]));
        let wf = wf_fixpoint_det(&f.p, 12).unwrap();
        assert_eq!(wf.models, vec![f.pair(&["q"], &["q"])]);
        assert!(wf.unique);
        let f = Fx::new("p.");
        assert_eq!(kk_fixpoint_det(&f.p, 12).unwrap(), f.pair(&["p"], &["p"]));
        assert_eq!(
            wf_fixpoint_det(&f.p, 12).unwrap().models,
            vec![f.pair(&["p"], &["p"])]
        );
        let f = Fx::new("p :- p.");
        assert_eq!(kk_fixpoint_det(&f.p, 12).unwrap(), f.pair(&[], &["p"]));
        let f = Fx::new("p :- not p.");
        assert_eq!(
            wf_fixpoint_det(&f.p, 12).unwrap().models,
            vec![f.pair(&[], &["p"])]
        );
        let f = Fx::new(EXAMPLE2);
        assert!(matches!(
            kk_fixpoint_det(&f.p, 12),
            Err(Error::ClassMismatch { .. })
        ));
    }

    #[test]
    fn ht_models_examples() {
        let f = Fx::new("b :- not c.");
        assert!(ht_models_program(&f.p, 12)
            .unwrap()
            .contains(&f.pair(&[], &["c"])));
        let empty = Program::empty();
        assert_eq!(
            ht_models_program(&empty, 12).unwrap(),
            vec![ApproxPair::default()]
        );
        let f = Fx::new(DMT_DET);
        assert!(ht_models_program(&f.p, 12).is_err());
    }

    #[test]
    fn odd_loop_choice() {
        let f = Fx::new(SEQ_EXAMPLE);
        let seq = f.solver(OperatorKind::Ic).seq().unwrap();
        assert_eq!(
            seq,
            vec![f.pair(&["q"], &["p", "q"]), f.pair(&["s"], &["p", "s"])]
        );
        let ht = f.solver(OperatorKind::Ic).ht_pairs().unwrap();
        assert_eq!(ht, ht_models_program(&f.p, 12).unwrap());
    }

    #[test]
    fn three_valued_examples() {
        let f = Fx::new(EXAMPLE2);
        let tv = three_valued_stable(&f.p, 12).unwrap();
        assert!(tv.contains(&f.pair(&["p"], &["p"])) && tv.contains(&f.pair(&[], &["q"])));
        let f = Fx::new("p :- not p.");
        assert_eq!(
            three_valued_stable(&f.p, 12).unwrap(),
            vec![f.pair(&[], &["p"])]
        );
    }

    #[test]
    fn gz_answer_set_examples() {
        let f = Fx::new(GZ_EXAMPLE);
        assert!(gz_answer_sets(&f.p, 12)
            .unwrap()
            .contains(&f.set(&["p", "q"])));
        let f = Fx::new(DMT_DET);
        assert!(gz_answer_sets(&f.p, 12).unwrap().is_empty());
        let f = Fx::new(EXAMPLE2);
        assert_eq!(
            gz_answer_sets(&f.p, 12).unwrap(),
            f.solver(OperatorKind::Ic).total_stable().unwrap()
        );
    }

    #[test]
    fn run_semantics_reports_metadata() {
        let f = Fx::new(EXAMPLE2);
        let r = run_semantics(SemanticsKind::Stable, Some(OperatorKind::Ic), &f.p, 12).unwrap();
        assert_eq!(r.models.len(), 2);
        assert_eq!(r.program_hash.len(), 64);
        assert_eq!(r.universe, ["p", "q"]);
        assert!(run_semantics(SemanticsKind::Stable, None, &f.p, 12).is_err());
        assert!(matches!(
            run_semantics(SemanticsKind::Stable, Some(OperatorKind::Ic), &f.p, 1),
            Err(Error::CapExceeded { size: 2, cap: 1 })
        ));
    }

    #[test]
    fn gap_minimality_keeps_incomparable_gaps() {
        let a = ApproxPair::new(AtomSet::EMPTY, AtomSet::from_atoms([0]));
        let b = ApproxPair::new(AtomSet::EMPTY, AtomSet::from_atoms([1]));
        let c = ApproxPair::new(AtomSet::EMPTY, AtomSet::from_atoms([0, 1]));
        assert_eq!(gap_minimal(&[a, b, c]), vec![a, b]);
    }
}
