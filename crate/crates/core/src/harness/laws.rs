//! Algebraic laws of the operators and semantics, checked exhaustively per
//! program, with a shrinker that reduces failing programs.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::lattice::{
    enumerate_consistent_pairs, smyth_leq, subsets, ApproxPair, AtomSet, NdPair, NdSet,
};
use crate::operators::{dmt_det, dmt_ndao, ic, ic_ndao, Approximator, OperatorKind};
use crate::program::{parse, Body, Classification, Program};
use crate::semantics::{
    det_stable_pairs, gz_answer_sets, ht_models_program, is_three_valued_model, min_t,
    three_valued_stable, Solver,
};

/// Supplies the approximator used for each operator kind.
pub trait OperatorSet {
    fn get(&self, kind: OperatorKind) -> &dyn Approximator;
}

/// The operators as defined by the library.
#[derive(Copy, Clone, Debug, Default)]
pub struct StandardOperators;

impl OperatorSet for StandardOperators {
    fn get(&self, kind: OperatorKind) -> &dyn Approximator {
        match kind {
            OperatorKind::Ic => &OperatorKind::Ic,
            OperatorKind::Dmt => &OperatorKind::Dmt,
            OperatorKind::Ultimate => &OperatorKind::Ultimate,
            OperatorKind::Gz => &OperatorKind::Gz,
            OperatorKind::DmtDet => &OperatorKind::DmtDet,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Law {
    Monotonicity,
    Exactness,
    PrecisionChain,
    UltimateMaximality,
    Symmetry,
    UpwardsCoherence,
    NonEmptiness,
    DeterministicCollapse,
    ModelsAreHtModels,
    HtCoincidence,
    TotalHtStable,
    SeqNonEmpty,
    SeqCoincidence,
    StableAreMinimal,
    GzMinimalTotal,
    GzAnswerSets,
    DeterministicStable,
    PrefixpointCoincidence,
    LowerBoundSuffices,
    SeqApproxSuperset,
    ThreeValuedOracle,
}

impl Law {
    pub const ALL: [Law; 21] = [
        Law::Monotonicity,
        Law::Exactness,
        Law::PrecisionChain,
        Law::UltimateMaximality,
        Law::Symmetry,
        Law::UpwardsCoherence,
        Law::NonEmptiness,
        Law::DeterministicCollapse,
        Law::ModelsAreHtModels,
        Law::HtCoincidence,
        Law::TotalHtStable,
        Law::SeqNonEmpty,
        Law::SeqCoincidence,
        Law::StableAreMinimal,
        Law::GzMinimalTotal,
        Law::GzAnswerSets,
        Law::DeterministicStable,
        Law::PrefixpointCoincidence,
        Law::LowerBoundSuffices,
        Law::SeqApproxSuperset,
        Law::ThreeValuedOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Monotonicity => "monotonicity",
            Law::Exactness => "exactness",
            Law::PrecisionChain => "precision-chain",
            Law::UltimateMaximality => "ultimate-maximality",
            Law::Symmetry => "symmetry",
            Law::UpwardsCoherence => "upwards-coherence",
            Law::NonEmptiness => "non-emptiness",
            Law::DeterministicCollapse => "deterministic-collapse",
            Law::ModelsAreHtModels => "models-are-ht-models",
            Law::HtCoincidence => "ht-coincidence",
            Law::TotalHtStable => "total-ht-stable",
            Law::SeqNonEmpty => "seq-nonempty",
            Law::SeqCoincidence => "seq-coincidence",
            Law::StableAreMinimal => "stable-are-minimal",
            Law::GzMinimalTotal => "gz-minimal-total",
            Law::GzAnswerSets => "gz-answer-sets",
            Law::DeterministicStable => "deterministic-stable",
            Law::PrefixpointCoincidence => "prefixpoint-coincidence",
            Law::LowerBoundSuffices => "lower-bound-suffices",
            Law::SeqApproxSuperset => "seq-approx-superset",
            Law::ThreeValuedOracle => "three-valued-oracle",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Law::Monotonicity => "i1 ≤ᵢ i2 implies O(i1) ⪯ᴬᵢ O(i2)",
            Law::Exactness => "O(x,x) = IC(x) × IC(x)",
            Law::PrecisionChain => "GZ ⪯ᴬᵢ DMT ⪯ᴬᵢ ultimate",
            Law::UltimateMaximality => "IC, DMT and GZ are ⪯ᴬᵢ-below the ultimate operator",
            Law::Symmetry => "four-valued lower bound at (x,y) equals upper bound at (y,x)",
            Law::UpwardsCoherence => "lower candidates ⪯ˢ upper candidates",
            Law::NonEmptiness => "every candidate set is non-empty",
            Law::DeterministicCollapse => {
                "on normal programs the DMT ndao unions to the deterministic operator"
            }
            Law::ModelsAreHtModels => "three-valued models are HT-models",
            Law::HtCoincidence => "algebraic HT-pairs of IC equal HT-models",
            Law::TotalHtStable => "total ≤ₜ-minimal HT-pairs are the total stable fixpoints",
            Law::SeqNonEmpty => "semi-equilibrium models exist",
            Law::SeqCoincidence => {
                "semi-equilibrium models are the total stable fixpoints when any exist"
            }
            Law::StableAreMinimal => "stable fixpoints are ≤ₜ-minimal fixpoints",
            Law::GzMinimalTotal => "≤ₜ-minimal fixpoints of the GZ operator are total",
            Law::GzAnswerSets => "total stable fixpoints of the GZ operator are the GZ answer sets",
            Law::DeterministicStable => {
                "on normal programs DMT stable fixpoints are the deterministic stable pairs"
            }
            Law::PrefixpointCoincidence => {
                "minimal lower pre-fixpoints are the minimal lower fixpoints"
            }
            Law::LowerBoundSuffices => "(x,x) is stable iff x is a complete lower stable set at x",
            Law::SeqApproxSuperset => {
                "the difference-free approximation contains the semi-equilibrium models"
            }
            Law::ThreeValuedOracle => {
                "total three-valued stable models are the total stable fixpoints of IC"
            }
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Law {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Law::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| format!("unknown law `{s}`"))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Outcome {
    Pass,
    Skipped,
    Fail(String),
}

/// Operator kinds defined on `p`: IC needs an aggregate-free program, the
/// deterministic operator atomic heads.
fn kinds_for(c: &Classification, kinds: &[OperatorKind]) -> Vec<OperatorKind> {
    kinds
        .iter()
        .copied()
        .filter(|k| match k {
            OperatorKind::Ic => !c.has_aggregates,
            OperatorKind::DmtDet => c.is_normal(),
            _ => true,
        })
        .collect()
}

const NDAOS: [OperatorKind; 4] = [
    OperatorKind::Ic,
    OperatorKind::Dmt,
    OperatorKind::Ultimate,
    OperatorKind::Gz,
];

fn consistent_pairs(p: &Program) -> Vec<ApproxPair> {
    enumerate_consistent_pairs(p.universe(), p.universe().len())
        .expect("universe fits its own size")
        .collect()
}

fn all_pairs(p: &Program) -> Vec<ApproxPair> {
    let top = p.atoms();
    subsets(top)
        .flat_map(|x| subsets(top).map(move |y| ApproxPair::new(x, y)))
        .collect()
}

struct Ctx<'a> {
    p: &'a Program,
    ops: &'a dyn OperatorSet,
    class: Classification,
}

impl Ctx<'_> {
    fn show_pair(&self, i: ApproxPair) -> String {
        self.p.universe().show_pair(i)
    }

    fn show_nd(&self, s: &NdSet) -> String {
        self.p.universe().show_nd(s)
    }

    fn show_ndpair(&self, r: &NdPair) -> String {
        format!("{} × {}", self.show_nd(&r.lower), self.show_nd(&r.upper))
    }

    fn show_pairs(&self, ps: &[ApproxPair]) -> String {
        let items: Vec<String> = ps.iter().map(|i| self.show_pair(*i)).collect();
        format!("[{}]", items.join(", "))
    }

    fn apply(&self, k: OperatorKind, i: ApproxPair) -> Result<NdPair, Error> {
        self.ops.get(k).apply(self.p, i)
    }

    fn solver(&self, k: OperatorKind) -> Result<Solver<'_, dyn Approximator + '_>, Error> {
        Solver::new(self.ops.get(k), self.p, self.p.universe().len())
    }
}

fn fail(msg: String) -> Result<Outcome, Error> {
    Ok(Outcome::Fail(msg))
}

fn totals(ps: &[ApproxPair]) -> Vec<ApproxPair> {
    ps.iter().copied().filter(ApproxPair::is_total).collect()
}

/// Checks one law on one program.
pub fn check_law(law: Law, p: &Program, ops: &dyn OperatorSet) -> Outcome {
    let ctx = Ctx {
        p,
        ops,
        class: p.classify(),
    };
    match run(law, &ctx) {
        Ok(o) => o,
        Err(e) => Outcome::Fail(format!("unexpected error: {e}")),
    }
}

fn run(law: Law, c: &Ctx<'_>) -> Result<Outcome, Error> {
    let plain = c.class.is_disjunctively_normal() && !c.class.has_aggregates;
    match law {
        Law::Monotonicity => {
            let pairs = consistent_pairs(c.p);
            for k in kinds_for(&c.class, &OperatorKind::ALL) {
                for &a in &pairs {
                    let ra = c.apply(k, a)?;
                    for &b in pairs.iter().filter(|b| a.leq_i(b) && a != **b) {
                        let rb = c.apply(k, b)?;
                        if !ra.aprec_leq(&rb) {
                            return fail(format!(
                                "{k}: {} ≤ᵢ {} but {} is not ⪯ᴬᵢ {}",
                                c.show_pair(a),
                                c.show_pair(b),
                                c.show_ndpair(&ra),
                                c.show_ndpair(&rb)
                            ));
                        }
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        Law::Exactness => {
            for k in kinds_for(&c.class, &NDAOS) {
                for x in subsets(c.p.atoms()) {
                    let r = c.apply(k, ApproxPair::total(x))?;
                    let expected = NdPair::exact(ic(c.p, x).into_owned());
                    if r != expected {
                        return fail(format!(
                            "{k} at {}: {} instead of {}",
                            c.show_pair(ApproxPair::total(x)),
                            c.show_ndpair(&r),
                            c.show_ndpair(&expected)
                        ));
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        Law::PrecisionChain => {
            for i in consistent_pairs(c.p) {
                let gz = c.apply(OperatorKind::Gz, i)?;
                let dmt = c.apply(OperatorKind::Dmt, i)?;
                let ult = c.apply(OperatorKind::Ultimate, i)?;
                if !gz.aprec_leq(&dmt) || !dmt.aprec_leq(&ult) {
                    return fail(format!(
                        "at {}: gz {}, dmt {}, ultimate {}",
                        c.show_pair(i),
                        c.show_ndpair(&gz),
                        c.show_ndpair(&dmt),
                        c.show_ndpair(&ult)
                    ));
                }
            }
            Ok(Outcome::Pass)
        }
        Law::UltimateMaximality => {
            let kinds = kinds_for(
                &c.class,
                &[OperatorKind::Ic, OperatorKind::Dmt, OperatorKind::Gz],
            );
            for i in consistent_pairs(c.p) {
                let ult = c.apply(OperatorKind::Ultimate, i)?;
                for &k in &kinds {
                    let r = c.apply(k, i)?;
                    if !r.aprec_leq(&ult) {
                        return fail(format!(
                            "{k} at {}: {} is not ⪯ᴬᵢ ultimate {}",
                            c.show_pair(i),
                            c.show_ndpair(&r),
                            c.show_ndpair(&ult)
                        ));
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        Law::Symmetry => {
            if c.class.has_aggregates {
                return Ok(Outcome::Skipped);
            }
            for i in all_pairs(c.p) {
                let a = ic_ndao(c.p, i)?;
                let b = ic_ndao(c.p, i.swap())?;
                if a.lower != b.upper {
                    return fail(format!(
                        "lower at {} is {}, upper at {} is {}",
                        c.show_pair(i),
                        c.show_nd(&a.lower),
                        c.show_pair(i.swap()),
                        c.show_nd(&b.upper)
                    ));
                }
            }
            Ok(Outcome::Pass)
        }
        Law::UpwardsCoherence => {
            for k in kinds_for(&c.class, &NDAOS) {
                for i in consistent_pairs(c.p) {
                    let r = c.apply(k, i)?;
                    if !smyth_leq(&r.lower, &r.upper) {
                        return fail(format!("{k} at {}: {}", c.show_pair(i), c.show_ndpair(&r)));
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        Law::NonEmptiness => {
            for k in kinds_for(&c.class, &OperatorKind::ALL) {
                for i in consistent_pairs(c.p) {
                    let r = c.apply(k, i)?;
                    if r.lower.is_empty() || r.upper.is_empty() {
                        return fail(format!("{k} at {}: {}", c.show_pair(i), c.show_ndpair(&r)));
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        Law::DeterministicCollapse => {
            if !c.class.is_normal() {
                return Ok(Outcome::Skipped);
            }
            let union = |s: &NdSet| s.iter().fold(AtomSet::EMPTY, |a, b| a.union(*b));
            for i in consistent_pairs(c.p) {
                let nd = dmt_ndao(c.p, i)?;
                let det = dmt_det(c.p, i)?;
                let got = ApproxPair::new(union(&nd.lower), union(&nd.upper));
                if got != det {
                    return fail(format!(
                        "at {}: unions {} but deterministic {}",
                        c.show_pair(i),
                        c.show_pair(got),
                        c.show_pair(det)
                    ));
                }
            }
            Ok(Outcome::Pass)
        }
        Law::ModelsAreHtModels => {
            if !plain {
                return Ok(Outcome::Skipped);
            }
            let ht = ht_models_program(c.p, c.p.universe().len())?;
            for i in consistent_pairs(c.p) {
                if is_three_valued_model(c.p, i)? && !ht.contains(&i) {
                    return fail(format!("model {} is not an HT-model", c.show_pair(i)));
                }
            }
            Ok(Outcome::Pass)
        }
        Law::HtCoincidence => {
            if !plain {
                return Ok(Outcome::Skipped);
            }
            let algebraic = c.solver(OperatorKind::Ic)?.ht_pairs()?;
            let models = ht_models_program(c.p, c.p.universe().len())?;
            if algebraic != models {
                return fail(format!(
                    "HT-pairs {} vs HT-models {}",
                    c.show_pairs(&algebraic),
                    c.show_pairs(&models)
                ));
            }
            Ok(Outcome::Pass)
        }
        Law::TotalHtStable => {
            for k in kinds_for(&c.class, &NDAOS) {
                let s = c.solver(k)?;
                let from_ht = totals(&min_t(&s.ht_pairs()?));
                let stable = totals(&s.stable()?);
                if from_ht != stable {
                    return fail(format!(
                        "{k}: total minimal HT-pairs {} vs total stable {}",
                        c.show_pairs(&from_ht),
                        c.show_pairs(&stable)
                    ));
                }
            }
            Ok(Outcome::Pass)
        }
        Law::SeqNonEmpty => {
            for k in kinds_for(&c.class, &NDAOS) {
                if c.solver(k)?.seq()?.is_empty() {
                    return fail(format!("{k}: no semi-equilibrium models"));
                }
            }
            Ok(Outcome::Pass)
        }
        Law::SeqCoincidence => {
            for k in kinds_for(&c.class, &NDAOS) {
                let s = c.solver(k)?;
                let seq = s.seq()?;
                let stable = totals(&s.stable()?);
                let applies = !stable.is_empty() || seq.iter().any(ApproxPair::is_total);
                if applies && seq != stable {
                    return fail(format!(
                        "{k}: SEQ {} vs total stable {}",
                        c.show_pairs(&seq),
                        c.show_pairs(&stable)
                    ));
                }
            }
            Ok(Outcome::Pass)
        }
        Law::StableAreMinimal => {
            for k in [OperatorKind::Gz, OperatorKind::Dmt, OperatorKind::Ultimate] {
                let s = c.solver(k)?;
                let minimal = min_t(&s.fixpoints()?);
                for st in s.stable()? {
                    if !minimal.contains(&st) {
                        return fail(format!(
                            "{k}: stable {} is not among the ≤ₜ-minimal fixpoints {}",
                            c.show_pair(st),
                            c.show_pairs(&minimal)
                        ));
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        Law::GzMinimalTotal => {
            let s = c.solver(OperatorKind::Gz)?;
            let minimal = min_t(&s.fixpoints()?);
            if let Some(bad) = minimal.iter().find(|i| !i.is_total()) {
                return fail(format!(
                    "≤ₜ-minimal fixpoint {} is not total (minimal fixpoints {})",
                    c.show_pair(*bad),
                    c.show_pairs(&minimal)
                ));
            }
            Ok(Outcome::Pass)
        }
        Law::GzAnswerSets => {
            if !c.class.is_disjunctively_normal() || c.class.negated_aggregates {
                return Ok(Outcome::Skipped);
            }
            let stable = c.solver(OperatorKind::Gz)?.total_stable()?;
            let answer = gz_answer_sets(c.p, c.p.universe().len())?;
            if stable != answer {
                let show = |xs: &[AtomSet]| {
                    let items: Vec<String> =
                        xs.iter().map(|x| c.p.universe().show_set(*x)).collect();
                    format!("[{}]", items.join(", "))
                };
                return fail(format!(
                    "total stable fixpoints {} vs GZ answer sets {}",
                    show(&stable),
                    show(&answer)
                ));
            }
            Ok(Outcome::Pass)
        }
        Law::DeterministicStable => {
            if !c.class.is_normal() {
                return Ok(Outcome::Skipped);
            }
            let nd = c.solver(OperatorKind::Dmt)?.stable()?;
            let det = det_stable_pairs(c.p, c.p.universe().len())?;
            if nd != det {
                return fail(format!(
                    "DMT stable {} vs deterministic stable {}",
                    c.show_pairs(&nd),
                    c.show_pairs(&det)
                ));
            }
            Ok(Outcome::Pass)
        }
        Law::PrefixpointCoincidence => {
            for k in kinds_for(&c.class, &NDAOS) {
                let s = c.solver(k)?;
                for y in subsets(c.p.atoms()) {
                    let pre = s.minimal_lower_prefixpoints(y)?;
                    let fixed = s.complete_lower_stable(y)?;
                    if pre != fixed {
                        return fail(format!(
                            "{k} at y = {}: minimal pre-fixpoints {} vs minimal fixpoints {}",
                            c.p.universe().show_set(y),
                            c.show_nd(&pre),
                            c.show_nd(&fixed)
                        ));
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        Law::LowerBoundSuffices => {
            for k in kinds_for(&c.class, &NDAOS) {
                let s = c.solver(k)?;
                let stable = s.total_stable()?;
                for x in subsets(c.p.atoms()) {
                    let by_lower = s.complete_lower_stable(x)?.contains(&x);
                    if by_lower != stable.contains(&x) {
                        return fail(format!(
                            "{k} at x = {}: lower-stable {by_lower}, total stable {}",
                            c.p.universe().show_set(x),
                            !by_lower
                        ));
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        Law::SeqApproxSuperset => {
            for k in kinds_for(&c.class, &NDAOS) {
                let s = c.solver(k)?;
                let seq = s.seq()?;
                let approx = s.seq_no_difference()?;
                if let Some(missing) = seq.iter().find(|i| !approx.contains(i)) {
                    return fail(format!(
                        "{k}: SEQ member {} missing from {}",
                        c.show_pair(*missing),
                        c.show_pairs(&approx)
                    ));
                }
            }
            Ok(Outcome::Pass)
        }
        Law::ThreeValuedOracle => {
            if !plain {
                return Ok(Outcome::Skipped);
            }
            let oracle = totals(&three_valued_stable(c.p, c.p.universe().len())?);
            let stable = totals(&c.solver(OperatorKind::Ic)?.stable()?);
            if oracle != stable {
                return fail(format!(
                    "total three-valued stable {} vs total stable fixpoints {}",
                    c.show_pairs(&oracle),
                    c.show_pairs(&stable)
                ));
            }
            Ok(Outcome::Pass)
        }
    }
}

/// Programs one step smaller than `p`, in canonical form.
fn shrink_candidates(p: &Program) -> Vec<Program> {
    let mut out = Vec::new();
    let rules = p.rules();
    let rebuild = |rules: Vec<crate::program::Rule>| -> Option<Program> {
        let raw = Program::new(p.universe().clone(), rules).ok()?;
        parse(&raw.to_string()).ok()
    };
    for i in 0..rules.len() {
        let mut rs = rules.to_vec();
        rs.remove(i);
        out.extend(rebuild(rs));
    }
    for (i, rule) in rules.iter().enumerate() {
        if let Body::Conj(lits) = &rule.body {
            for j in 0..lits.len() {
                let mut rs = rules.to_vec();
                if let Body::Conj(l) = &mut rs[i].body {
                    l.remove(j);
                }
                out.extend(rebuild(rs));
            }
        }
        if rule.head.len() > 1 {
            for a in rule.head.iter() {
                let mut rs = rules.to_vec();
                rs[i].head = rule.head.minus(AtomSet::singleton(a));
                out.extend(rebuild(rs));
            }
        }
    }
    out
}

/// Greedily shrinks `p` while the law keeps failing on it.
pub fn shrink(law: Law, p: &Program, ops: &dyn OperatorSet) -> Program {
    let mut current = p.clone();
    'outer: loop {
        for candidate in shrink_candidates(&current) {
            if matches!(check_law(law, &candidate, ops), Outcome::Fail(_)) {
                current = candidate;
                continue 'outer;
            }
        }
        return current;
    }
}

/// A failing program after shrinking.
#[derive(Clone, Debug)]
pub struct Counterexample {
    /// Where the original program came from.
    pub origin: String,
    pub program: Program,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct LawReport {
    pub law: Law,
    pub checked: usize,
    pub skipped: usize,
    pub counterexample: Option<Counterexample>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `law` on every program, stopping at the first failure, which is
/// shrunk before being reported.
pub fn check_programs<'a, I>(law: Law, programs: I, ops: &dyn OperatorSet) -> LawReport
where
    I: IntoIterator<Item = (String, &'a Program)>,
{
    let mut report = LawReport {
        law,
        checked: 0,
        skipped: 0,
        counterexample: None,
    };
    for (origin, p) in programs {
        match check_law(law, p, ops) {
            Outcome::Pass => report.checked += 1,
            Outcome::Skipped => report.skipped += 1,
            Outcome::Fail(_) => {
                report.checked += 1;
                let small = shrink(law, p, ops);
                let message = match check_law(law, &small, ops) {
                    Outcome::Fail(m) => m,
                    _ => unreachable!("shrinking keeps the failure"),
                };
                report.counterexample = Some(Counterexample {
                    origin,
                    program: small,
                    message,
                });
                break;
            }
        }
    }
    report
}
