//! Worked-example programs bundled with the library.

use crate::program::{parse, Program};

pub struct CorpusEntry {
    pub name: &'static str,
    pub text: &'static str,
}

impl CorpusEntry {
    pub fn program(&self) -> Program {
        parse(self.text).expect("corpus programs parse")
    }
}

macro_rules! corpus {
    ($($name:literal),* $(,)?) => {
        &[$(CorpusEntry {
            name: $name,
            text: include_str!(concat!("../../corpus/", $name, ".lp")),
        }),*]
    };
}

pub const CORPUS: &[CorpusEntry] = corpus!(
    "guarded_disjunction",
    "negation_and_loop",
    "odd_loop_disjunction",
    "aggregate_cycle",
    "odd_loop_choice",
    "nested_aggregates",
    "self_supporting_sum",
    "sum_below_one",
    "sum_below_zero",
    "single_negation",
);

pub fn corpus_entry(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.name == name)
}
