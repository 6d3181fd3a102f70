use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lattice::{ApproxPair, AtomSet, NdPair, NdSet, Universe};
use crate::operators::OperatorKind;
use crate::semantics::{SemanticsKind, SemanticsResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDocument {
    pub lower: Vec<String>,
    pub upper: Vec<String>,
}

impl PairDocument {
    pub fn new(u: &Universe, i: ApproxPair) -> Self {
        PairDocument {
            lower: u.names_of(i.lower),
            upper: u.names_of(i.upper),
        }
    }

    pub fn to_pair(&self, u: &Universe) -> Result<ApproxPair, Error> {
        Ok(ApproxPair::new(
            u.set_of(self.lower.iter().map(String::as_str))?,
            u.set_of(self.upper.iter().map(String::as_str))?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub models: usize,
    pub total: usize,
}

/// JSON form of a [`SemanticsResult`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemanticsDocument {
    pub universe: Vec<String>,
    pub operator: Option<OperatorKind>,
    pub semantics: SemanticsKind,
    pub program_hash: String,
    pub models: Vec<PairDocument>,
    pub counts: Counts,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl SemanticsDocument {
    pub fn new(r: &SemanticsResult) -> Result<Self, Error> {
        let u = Universe::new(r.universe.iter().cloned())?;
        Ok(SemanticsDocument {
            universe: r.universe.clone(),
            operator: r.operator,
            semantics: r.kind,
            program_hash: r.program_hash.clone(),
            models: r.models.iter().map(|i| PairDocument::new(&u, *i)).collect(),
            counts: Counts {
                models: r.models.len(),
                total: r.models.iter().filter(|i| i.is_total()).count(),
            },
            warnings: r.warnings.clone(),
        })
    }

    pub fn to_result(&self) -> Result<SemanticsResult, Error> {
        let u = Universe::new(self.universe.iter().cloned())?;
        let models = self
            .models
            .iter()
            .map(|m| m.to_pair(&u))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SemanticsResult {
            kind: self.semantics,
            models,
            operator: self.operator,
            program_hash: self.program_hash.clone(),
            universe: self.universe.clone(),
            warnings: self.warnings.clone(),
        })
    }
}

pub fn semantics_json(r: &SemanticsResult) -> Result<String, Error> {
    Ok(serde_json::to_string_pretty(&SemanticsDocument::new(r)?).expect("document serializes"))
}

pub fn semantics_text(r: &SemanticsResult) -> Result<String, Error> {
    let u = Universe::new(r.universe.iter().cloned())?;
    let mut out = format!("semantics: {}\n", r.kind);
    if let Some(op) = r.operator {
        out.push_str(&format!("operator: {op}\n"));
    }
    out.push_str(&format!("models: {}\n", r.models.len()));
    for m in &r.models {
        out.push_str(&u.show_pair(*m));
        out.push('\n');
    }
    for w in &r.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    Ok(out)
}

/// JSON form of one operator application.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalDocument {
    pub universe: Vec<String>,
    pub operator: OperatorKind,
    pub pair: PairDocument,
    pub lower: Vec<Vec<String>>,
    pub upper: Vec<Vec<String>>,
    pub counts: EvalCounts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalCounts {
    pub lower: usize,
    pub upper: usize,
}

fn nd_names(u: &Universe, s: &NdSet) -> Vec<Vec<String>> {
    s.iter().map(|x| u.names_of(*x)).collect()
}

pub fn eval_json(u: &Universe, op: OperatorKind, i: ApproxPair, r: &NdPair) -> String {
    let doc = EvalDocument {
        universe: u.names().to_vec(),
        operator: op,
        pair: PairDocument::new(u, i),
        lower: nd_names(u, &r.lower),
        upper: nd_names(u, &r.upper),
        counts: EvalCounts {
            lower: r.lower.len(),
            upper: r.upper.len(),
        },
    };
    serde_json::to_string_pretty(&doc).expect("document serializes")
}

pub fn eval_text(u: &Universe, r: &NdPair) -> String {
    format!(
        "lower: {}; upper: {}\n",
        u.show_nd(&r.lower),
        u.show_nd(&r.upper)
    )
}

/// Parses `"x;y"`, each side a comma-separated list of atoms.
pub fn parse_pair(u: &Universe, text: &str) -> Result<ApproxPair, Error> {
    let (x, y) = text
        .split_once(';')
        .ok_or_else(|| Error::InvalidConfig(format!("pair `{text}` must have the form `x;y`")))?;
    let side = |s: &str| -> Result<AtomSet, Error> {
        u.set_of(s.split(',').map(str::trim).filter(|a| !a.is_empty()))
    };
    Ok(ApproxPair::new(side(x)?, side(y)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::parse;
    use crate::semantics::run_semantics;

    #[test]
    fn json_round_trip() {
        let p = parse("p | q :- not q.").unwrap();
        let r = run_semantics(SemanticsKind::Stable, Some(OperatorKind::Ic), &p, 12).unwrap();
        let text = semantics_json(&r).unwrap();
        let doc: SemanticsDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(doc.to_result().unwrap(), r);
        assert_eq!(doc.operator, Some(OperatorKind::Ic));
        assert_eq!(
            doc.counts,
            Counts {
                models: 2,
                total: 1
            }
        );
    }

    #[test]
    fn text_rendering() {
        let p = parse("p | q :- not q.").unwrap();
        let r = run_semantics(SemanticsKind::Stable, Some(OperatorKind::Ic), &p, 12).unwrap();
        assert_eq!(
            semantics_text(&r).unwrap(),
            "semantics: stable\noperator: ic\nmodels: 2\n(∅,{q})\n({p},{p})\n"
        );
    }

    #[test]
    fn pairs_parse() {
        let u = Universe::new(["p", "q"]).unwrap();
        let i = parse_pair(&u, ";p, q").unwrap();
        assert_eq!(i, ApproxPair::new(AtomSet::EMPTY, u.top()));
        assert!(parse_pair(&u, "p").is_err());
        assert_eq!(parse_pair(&u, "r;"), Err(Error::UnknownAtom("r".into())));
    }
}
