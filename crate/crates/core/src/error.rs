use std::fmt;

use crate::word::SquareOccurrence;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which resource limit stopped a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetReason {
    VisitedWords,
    Memory,
    WallTime,
    Cancelled,
    Enumeration,
}

impl fmt::Display for BudgetReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BudgetReason::VisitedWords => "visited-word limit",
            BudgetReason::Memory => "memory limit",
            BudgetReason::WallTime => "wall-time limit",
            BudgetReason::Cancelled => "cancelled",
            BudgetReason::Enumeration => "enumeration limit",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("empty word")]
    EmptyWord,
    #[error("unknown symbol {symbol:?} at position {position}")]
    UnknownSymbol { position: usize, symbol: char },
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("alphabet mismatch: expected {expected:?}, found {found:?}")]
    AlphabetMismatch { expected: String, found: String },
    #[error("letter index {index} out of range for alphabet of size {size}")]
    LetterOutOfRange { index: u8, size: usize },
    #[error("({}, {}) is not a square occurrence", .0.start, .0.period)]
    InvalidOccurrence(SquareOccurrence),
    #[error("trace step {index} is not a square occurrence of the current word")]
    InvalidStep { index: usize },
    #[error("invalid trace: {0}")]
    InvalidTrace(String),
    #[error("invalid limits: {0}")]
    InvalidLimits(String),
    #[error("budget exceeded ({reason}) after {visited} visited words")]
    BudgetExceeded { reason: BudgetReason, visited: u64 },
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
    #[error("need {needed} prefixes, family has {available}")]
    InsufficientPrefixes { needed: usize, available: usize },
    #[error("word {0:?} must start and end with x")]
    BadAnchor(String),
    #[error("exponent vector has length {exponents}, word has length {word}")]
    LengthMismatch { word: usize, exponents: usize },
    #[error("exponent at position {0} is zero")]
    ZeroExponent(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
