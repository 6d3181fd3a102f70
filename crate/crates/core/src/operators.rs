//! Consequence operators of a program: the immediate-consequence family
//! `IC_P`, and the approximators built from it.

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::four::TruthValue;
use crate::lattice::{enumerate_interval, subsets, ApproxPair, AtomSet, NdPair, NdSet};
use crate::program::{eval_body, HeadFamily, Program};

/// `HD_P(x)`: head sets of the rules whose bodies are true at `x`.
pub fn hd(p: &Program, x: AtomSet) -> Cow<'_, HeadFamily> {
    p.memo_hd(x, || {
        p.rules()
            .iter()
            .filter(|r| eval_body(x, r))
            .map(|r| r.head)
            .collect()
    })
}

/// All subsets of `⋃heads` meeting every head; `{∅}` for an empty family.
/// Not restricted to minimal hitting sets.
pub fn hitting_sets(heads: &HeadFamily) -> Result<NdSet, Error> {
    if heads.iter().any(|h| h.is_empty()) {
        return Err(Error::EmptyHead);
    }
    let union = heads.iter().fold(AtomSet::EMPTY, |acc, h| acc.union(*h));
    Ok(subsets(union)
        .filter(|s| heads.iter().all(|h| s.intersects(*h)))
        .collect())
}

fn hits(heads: &HeadFamily) -> NdSet {
    hitting_sets(heads).expect("program heads are non-empty")
}

/// `IC_P(x)`.
pub fn ic(p: &Program, x: AtomSet) -> Cow<'_, NdSet> {
    p.memo_ic(x, || hits(&hd(p, x)))
}

fn check_pair(p: &Program, i: ApproxPair) -> Result<(), Error> {
    p.universe().check_pair(i)?;
    if !i.is_consistent() {
        return Err(Error::InconsistentPair);
    }
    Ok(())
}

/// The four-valued ndao of an aggregate-free program. Defined on all pairs,
/// consistent or not.
pub fn ic_ndao(p: &Program, i: ApproxPair) -> Result<NdPair, Error> {
    OperatorKind::Ic.check_program(p)?;
    p.universe().check_pair(i)?;
    let mut lower = HeadFamily::new();
    let mut upper = HeadFamily::new();
    for rule in p.rules() {
        let v = rule.body.eval4(i)?;
        if TruthValue::C.leq_t(v) {
            lower.insert(rule.head);
        }
        if TruthValue::U.leq_t(v) {
            upper.insert(rule.head);
        }
    }
    Ok(NdPair::new(hits(&lower), hits(&upper)))
}

/// The deterministic operator for normal programs: head atoms fired at every
/// point of the interval, and at some point of it.
pub fn dmt_det(p: &Program, i: ApproxPair) -> Result<ApproxPair, Error> {
    OperatorKind::DmtDet.check_program(p)?;
    check_pair(p, i)?;
    let mut lower = p.atoms();
    let mut upper = AtomSet::EMPTY;
    for z in enumerate_interval(i.lower, i.upper)? {
        let fired = hd(p, z).iter().fold(AtomSet::EMPTY, |acc, h| acc.union(*h));
        lower = lower.intersection(fired);
        upper = upper.union(fired);
    }
    Ok(ApproxPair::new(lower, upper))
}

/// Head families common to the whole interval (lower) and occurring
/// somewhere in it (upper), each closed under hitting sets.
pub fn dmt_ndao(p: &Program, i: ApproxPair) -> Result<NdPair, Error> {
    check_pair(p, i)?;
    let mut lower: Option<HeadFamily> = None;
    let mut upper = HeadFamily::new();
    for z in enumerate_interval(i.lower, i.upper)? {
        let heads = hd(p, z);
        lower = Some(match lower {
            None => heads.as_ref().clone(),
            Some(acc) => acc.intersection(&heads).copied().collect(),
        });
        upper.extend(heads.iter().copied());
    }
    Ok(NdPair::new(hits(&lower.unwrap_or_default()), hits(&upper)))
}

/// `⋃ IC_P(z)` over the interval, on both sides.
pub fn ultimate_ndao(p: &Program, i: ApproxPair) -> Result<NdPair, Error> {
    check_pair(p, i)?;
    let mut all = NdSet::new();
    for z in enumerate_interval(i.lower, i.upper)? {
        all.extend(ic(p, z).iter().copied());
    }
    Ok(NdPair::exact(all))
}

/// Exact on total pairs, least precise everywhere else.
pub fn gz_ndao(p: &Program, i: ApproxPair) -> Result<NdPair, Error> {
    check_pair(p, i)?;
    if i.is_total() {
        Ok(NdPair::exact(ic(p, i.lower).into_owned()))
    } else {
        Ok(NdPair::new(
            NdSet::from([AtomSet::EMPTY]),
            NdSet::from([p.atoms()]),
        ))
    }
}

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    Ic,
    Dmt,
    Ultimate,
    Gz,
    DmtDet,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 5] = [
        OperatorKind::Ic,
        OperatorKind::Dmt,
        OperatorKind::Ultimate,
        OperatorKind::Gz,
        OperatorKind::DmtDet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::Ic => "ic",
            OperatorKind::Dmt => "dmt",
            OperatorKind::Ultimate => "ultimate",
            OperatorKind::Gz => "gz",
            OperatorKind::DmtDet => "dmt-det",
        }
    }

    pub fn check_program(self, p: &Program) -> Result<(), Error> {
        match self {
            OperatorKind::Ic if p.has_aggregates() => Err(Error::class(
                "the four-valued operator `ic`",
                "an aggregate-free program",
            )),
            OperatorKind::DmtDet if !p.rules().iter().all(|r| r.head.len() == 1) => {
                Err(Error::class(
                    "the deterministic operator `dmt-det`",
                    "a program with atomic heads",
                ))
            }
            _ => Ok(()),
        }
    }

    /// Applies the operator; the deterministic one is lifted to singletons.
    pub fn apply(self, p: &Program, i: ApproxPair) -> Result<NdPair, Error> {
        match self {
            OperatorKind::Ic => ic_ndao(p, i),
            OperatorKind::Dmt => dmt_ndao(p, i),
            OperatorKind::Ultimate => ultimate_ndao(p, i),
            OperatorKind::Gz => gz_ndao(p, i),
            OperatorKind::DmtDet => dmt_det(p, i).map(NdPair::singletons),
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OperatorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown operator `{s}`"))
    }
}

/// Anything the semantics can be computed for. Implemented by
/// [`OperatorKind`]; tests plug in deliberately broken operators.
pub trait Approximator {
    fn label(&self) -> String;

    /// Whether the operator is defined on inconsistent pairs.
    fn accepts_inconsistent(&self) -> bool;

    fn check_program(&self, p: &Program) -> Result<(), Error>;

    fn apply(&self, p: &Program, i: ApproxPair) -> Result<NdPair, Error>;
}

impl Approximator for OperatorKind {
    fn label(&self) -> String {
        self.name().to_string()
    }

    fn accepts_inconsistent(&self) -> bool {
        *self == OperatorKind::Ic
    }

    fn check_program(&self, p: &Program) -> Result<(), Error> {
        OperatorKind::check_program(*self, p)
    }

    fn apply(&self, p: &Program, i: ApproxPair) -> Result<NdPair, Error> {
        OperatorKind::apply(*self, p, i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::parse;

    struct Fixture {
        p: Program,
    }

    impl Fixture {
        fn new(text: &str) -> Self {
            Fixture {
                p: parse(text).unwrap(),
            }
        }

        fn set(&self, names: &[&str]) -> AtomSet {
            self.p.universe().set_of(names.iter().copied()).unwrap()
        }

        fn nd(&self, sets: &[&[&str]]) -> NdSet {
            sets.iter().map(|s| self.set(s)).collect()
        }

        fn pair(&self, x: &[&str], y: &[&str]) -> ApproxPair {
            ApproxPair::new(self.set(x), self.set(y))
        }
    }

    const EXAMPLE2: &str = "p | q :- not q.";
    const EXAMPLE3: &str = "q :- not p.\np :- p.";
    const EXAMPLE4: &str = "q :- not q.\np | q :- q.";
    const EXAMPLE5: &str = "r | q :- #sum{1:s} > 0.\ns :- #sum{1:r; 1:q} > 0.";
    const DMT_DET: &str = "p :- #sum{1:p} > 0.\np :- #sum{1:p} < 1.";

    #[test]
    fn hd_examples() {
        let f = Fixture::new(EXAMPLE5);
        let expected: HeadFamily = [f.set(&["r", "q"]), f.set(&["s"])].into();
        assert_eq!(*hd(&f.p, f.set(&["r", "s"])), expected);
        assert!(hd(&f.p, AtomSet::EMPTY).is_empty());
        let f = Fixture::new(EXAMPLE2);
        assert_eq!(
            *hd(&f.p, AtomSet::EMPTY),
            HeadFamily::from([f.set(&["p", "q"])])
        );
    }

    #[test]
    fn hitting_set_examples() {
        let f = Fixture::new(EXAMPLE5);
        let f2 = Fixture::new(EXAMPLE2);
        let heads2 = HeadFamily::from([f2.set(&["p", "q"])]);
        assert_eq!(
            hitting_sets(&heads2).unwrap(),
            f2.nd(&[&["p"], &["q"], &["p", "q"]])
        );
        assert_eq!(
            hitting_sets(&HeadFamily::new()).unwrap(),
            NdSet::from([AtomSet::EMPTY])
        );
        let heads = HeadFamily::from([f.set(&["r", "q"]), f.set(&["s"])]);
        assert_eq!(
            hitting_sets(&heads).unwrap(),
            f.nd(&[&["r", "s"], &["q", "s"], &["r", "q", "s"]])
        );
        assert_eq!(
            hitting_sets(&HeadFamily::from([AtomSet::EMPTY])),
            Err(Error::EmptyHead)
        );
    }

    #[test]
    fn ic_examples() {
        let f = Fixture::new(EXAMPLE3);
        assert_eq!(*ic(&f.p, AtomSet::EMPTY), f.nd(&[&["q"]]));
        assert_eq!(*ic(&f.p, f.set(&["q"])), f.nd(&[&["q"]]));
        let f = Fixture::new(EXAMPLE5);
        assert_eq!(
            *ic(&f.p, f.set(&["s"])),
            f.nd(&[&["r"], &["q"], &["r", "q"]])
        );
        assert_eq!(*ic(&f.p, AtomSet::EMPTY), NdSet::from([AtomSet::EMPTY]));
    }

    #[test]
    fn ic_ndao_examples() {
        let f = Fixture::new(EXAMPLE2);
        let r = ic_ndao(&f.p, f.pair(&[], &["q"])).unwrap();
        assert_eq!(r.lower, NdSet::from([AtomSet::EMPTY]));
        assert_eq!(r.upper, f.nd(&[&["p"], &["q"], &["p", "q"]]));
        let r = ic_ndao(&f.p, f.pair(&["q"], &["q"])).unwrap();
        assert_eq!(r, NdPair::exact(NdSet::from([AtomSet::EMPTY])));
        for x in subsets(f.p.atoms()) {
            let r = ic_ndao(&f.p, ApproxPair::total(x)).unwrap();
            assert_eq!(r, NdPair::exact(ic(&f.p, x).into_owned()));
        }
        let agg = Fixture::new(EXAMPLE5);
        assert!(matches!(
            ic_ndao(&agg.p, ApproxPair::default()),
            Err(Error::ClassMismatch { .. })
        ));
    }

    #[test]
    fn dmt_det_examples() {
        let f = Fixture::new(EXAMPLE3);
        let i = f.pair(&[], &["p", "q"]);
        assert_eq!(dmt_det(&f.p, i).unwrap(), i);
        let f = Fixture::new(DMT_DET);
        assert_eq!(
            dmt_det(&f.p, f.pair(&[], &["p"])).unwrap(),
            f.pair(&["p"], &["p"])
        );
        let f = Fixture::new(EXAMPLE2);
        assert!(matches!(
            dmt_det(&f.p, ApproxPair::default()),
            Err(Error::ClassMismatch { .. })
        ));
        let f = Fixture::new(EXAMPLE3);
        assert_eq!(
            dmt_det(&f.p, f.pair(&["p"], &[])),
            Err(Error::InconsistentPair)
        );
    }

    #[test]
    fn dmt_ndao_examples() {
        let f = Fixture::new(EXAMPLE2);
        let all = f.nd(&[&["p"], &["q"], &["p", "q"]]);
        let r = dmt_ndao(&f.p, f.pair(&[], &["p", "q"])).unwrap();
        assert_eq!(r, NdPair::new(NdSet::from([AtomSet::EMPTY]), all.clone()));
        let r = dmt_ndao(&f.p, f.pair(&["p"], &["p"])).unwrap();
        assert_eq!(r, NdPair::exact(all));
        let f = Fixture::new(EXAMPLE4);
        let r = dmt_ndao(&f.p, f.pair(&[], &["q"])).unwrap();
        assert_eq!(r.lower, NdSet::from([AtomSet::EMPTY]));
        let f = Fixture::new(EXAMPLE5);
        let delta2 = f.nd(&[&["r", "s"], &["q", "s"], &["r", "q", "s"]]);
        let r = dmt_ndao(&f.p, f.pair(&["r", "s"], &["r", "s"])).unwrap();
        assert_eq!(r, NdPair::exact(delta2));
    }

    #[test]
    fn ultimate_examples() {
        let f = Fixture::new(EXAMPLE3);
        let r = ultimate_ndao(&f.p, f.pair(&[], &["p", "q"])).unwrap();
        assert_eq!(r, NdPair::exact(f.nd(&[&["p"], &["q"]])));
        let r = ultimate_ndao(&f.p, f.pair(&[], &["q"])).unwrap();
        assert_eq!(r, NdPair::exact(f.nd(&[&["q"]])));
        let f = Fixture::new(EXAMPLE5);
        let r = ultimate_ndao(&f.p, f.pair(&[], &["r", "s"])).unwrap();
        assert_eq!(r, NdPair::exact(subsets(f.set(&["q", "r", "s"])).collect()));
    }

    #[test]
    fn gz_examples() {
        let f = Fixture::new(EXAMPLE5);
        let delta2 = f.nd(&[&["r", "s"], &["q", "s"], &["r", "q", "s"]]);
        let r = gz_ndao(&f.p, f.pair(&["r", "s"], &["r", "s"])).unwrap();
        assert_eq!(r, NdPair::exact(delta2));
        let f = Fixture::new(DMT_DET);
        let r = gz_ndao(&f.p, f.pair(&[], &["p"])).unwrap();
        assert_eq!(
            r,
            NdPair::new(NdSet::from([AtomSet::EMPTY]), f.nd(&[&["p"]]))
        );
    }

    #[test]
    fn apply_dispatch() {
        let f = Fixture::new(EXAMPLE3);
        let r = OperatorKind::Ultimate
            .apply(&f.p, ApproxPair::default())
            .unwrap();
        assert_eq!(r, NdPair::exact(f.nd(&[&["q"]])));
        let r = OperatorKind::DmtDet
            .apply(&f.p, f.pair(&["q"], &["q"]))
            .unwrap();
        assert_eq!(r, NdPair::exact(f.nd(&[&["q"]])));
        assert!(matches!(
            OperatorKind::Dmt.apply(&f.p, f.pair(&["q"], &[])),
            Err(Error::InconsistentPair)
        ));
        for k in OperatorKind::ALL {
            assert_eq!(k.name().parse::<OperatorKind>().unwrap(), k);
        }
    }
}
