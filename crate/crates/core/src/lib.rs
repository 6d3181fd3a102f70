//! Non-deterministic approximation fixpoint theory over finite powerset
//! lattices, applied to disjunctive logic programs with aggregates.

pub mod error;
pub mod four;
pub mod harness;
pub mod lattice;
pub mod operators;
pub mod program;
pub mod semantics;

pub use error::{Error, ParseError, ParseErrorKind};
pub use four::{Formula, TruthValue};
pub use lattice::{ApproxPair, AtomId, AtomSet, NdPair, NdSet, Universe};
pub use operators::{Approximator, OperatorKind};
pub use program::{parse, Program};
pub use semantics::{run_semantics, SemanticsKind, SemanticsResult, Solver};
