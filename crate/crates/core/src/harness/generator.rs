use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lattice::{AtomSet, Universe, MAX_REPRESENTABLE_ATOMS};
use crate::program::{
    parse, AggregateAtom, AggregateFunction, Body, BodyLiteral, Comparator, Program, Rational,
    Rule, SetEntry, SetTerm,
};

/// Parameters of the random program generator. Equal configurations give
/// equal programs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub atoms: usize,
    pub rules: usize,
    /// Probability that a body literal is negated.
    pub neg_prob: f64,
    /// Probability that a body literal is an aggregate atom.
    pub agg_prob: f64,
    /// Maximum number of atoms in a head.
    pub disj_width: usize,
    /// Maximum number of body literals.
    pub max_body: usize,
    /// Whether aggregate literals may be negated too.
    pub negated_aggregates: bool,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            atoms: 3,
            rules: 4,
            neg_prob: 0.3,
            agg_prob: 0.2,
            disj_width: 2,
            max_body: 2,
            negated_aggregates: false,
            seed: 0,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.atoms == 0 || self.atoms > MAX_REPRESENTABLE_ATOMS {
            return bad(format!(
                "atom count must be in 1..={MAX_REPRESENTABLE_ATOMS}"
            ));
        }
        if self.disj_width == 0 || self.disj_width > self.atoms {
            return bad("disjunction width must be between 1 and the atom count".into());
        }
        for (name, p) in [("negation", self.neg_prob), ("aggregate", self.agg_prob)] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} probability must be in [0, 1]"));
            }
        }
        Ok(())
    }
}

/// Atom names `a`, `b`, ..., `z`, then `a26`, `a27`, ...
pub fn atom_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("a{i}")
    }
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, min: usize, max: usize) -> AtomSet {
    let k = rng.random_range(min..=max.min(n));
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    AtomSet::from_atoms(ids.into_iter().take(k))
}

fn random_aggregate(rng: &mut ChaCha8Rng, n: usize) -> AggregateAtom {
    let function = [
        AggregateFunction::Sum,
        AggregateFunction::Count,
        AggregateFunction::Max,
    ][rng.random_range(0..3)];
    let entries = (0..rng.random_range(1..=2))
        .map(|_| SetEntry {
            weights: vec![Rational::from_integer(rng.random_range(-1..=2))],
            condition: random_subset(rng, n, 1, 2),
        })
        .collect();
    AggregateAtom {
        function,
        term: SetTerm { entries },
        comparator: Comparator::ALL[rng.random_range(0..Comparator::ALL.len())],
        bound: Rational::from_integer(rng.random_range(-1..=2)),
    }
}

/// A random disjunctively normal program over at most `atoms` atoms. The
/// result is in canonical form: its universe holds exactly the atoms it
/// mentions, so printing and re-parsing gives it back unchanged.
pub fn generate_program(cfg: &GeneratorConfig) -> Result<Program, Error> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.atoms;
    let mut rules = Vec::with_capacity(cfg.rules);
    for _ in 0..cfg.rules {
        let head = random_subset(&mut rng, n, 1, cfg.disj_width);
        let len = rng.random_range(0..=cfg.max_body);
        let body = (0..len)
            .map(|_| {
                if rng.random_bool(cfg.agg_prob) {
                    let agg = random_aggregate(&mut rng, n);
                    if cfg.negated_aggregates && rng.random_bool(cfg.neg_prob) {
                        BodyLiteral::NegAgg(agg)
                    } else {
                        BodyLiteral::PosAgg(agg)
                    }
                } else {
                    let a = rng.random_range(0..n);
                    if rng.random_bool(cfg.neg_prob) {
                        BodyLiteral::Neg(a)
                    } else {
                        BodyLiteral::Pos(a)
                    }
                }
            })
            .collect();
        rules.push(Rule {
            head,
            body: Body::Conj(body),
        });
    }
    let universe = Universe::new((0..n).map(atom_name))?;
    let raw = Program::new(universe, rules)?;
    parse(&raw.to_string())
}
