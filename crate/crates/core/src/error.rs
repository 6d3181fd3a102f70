use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("atom names must be non-empty")]
    EmptyAtomName,
    #[error("set or pair mentions atoms outside the program's universe")]
    UniverseMismatch,
    #[error("pair is inconsistent (lower bound is not a subset of the upper bound)")]
    InconsistentPair,
    #[error("universe has {size} atoms, more than the allowed {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("rule head is empty")]
    EmptyHead,
    #[error("{operation} requires {requirement}")]
    ClassMismatch {
        operation: &'static str,
        requirement: &'static str,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    pub(crate) fn class(operation: &'static str, requirement: &'static str) -> Self {
        Error::ClassMismatch {
            operation,
            requirement,
        }
    }
}

/// A syntax error with its 1-based source position.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("empty disjunct in rule head")]
    EmptyDisjunct,
    #[error("aggregate atoms may only appear as body literals, not inside formulas")]
    AggregateInFormula,
    #[error("unknown aggregate function `#{0}`")]
    UnknownAggregate(String),
    #[error("compound formulas cannot be mixed with a comma-separated literal list")]
    CompoundInLiteralList,
    #[error("invalid number `{0}`")]
    BadNumber(String),
}
