//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by automaton algebra, numeration systems, word generators,
/// the formula compiler and the Sturmian constructions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two automata that must share an alphabet do not.
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    /// A word handed to `rank` (or a valuation) is not in the language.
    #[error("word {0:?} is not in the language")]
    NotInLanguage(String),
    /// `unrank` was asked for an index beyond a finite language.
    #[error("language is finite with {size} words; index {index} requested")]
    IndexOutOfRange {
        /// Number of words in the language.
        size: u128,
        /// Requested index.
        index: u128,
    },
    /// A path count or value did not fit into the native integer type.
    #[error("arithmetic overflow while {0}")]
    Overflow(String),
    /// The carry exploration of an addition automaton left the configured bound.
    #[error("carry bound {bound} exceeded (system may be non-addable, or the bound is too small)")]
    CarryBoundExceeded {
        /// The configured bound.
        bound: i64,
    },
    /// A compilation produced more states than the configured budget.
    #[error("state budget of {0} states exceeded")]
    StateBudget(usize),
    /// Formula text could not be parsed.
    #[error("parse error at byte {pos}: {msg}")]
    Parse {
        /// Byte offset of the error.
        pos: usize,
        /// Description.
        msg: String,
    },
    /// A formula mentions a name that is not bound.
    #[error("unbound {kind} `{name}`")]
    Unbound {
        /// `variable`, `sequence` or `predicate`.
        kind: &'static str,
        /// The offending name.
        name: String,
    },
    /// A subtraction that cannot be rewritten into addition atoms.
    #[error("unsupported subtraction: {0}")]
    Subtraction(String),
    /// A continued fraction is too short for the requested computation.
    #[error("continued-fraction depth exhausted: {0}")]
    DepthExhausted(String),
    /// Precondition violation of an operation.
    #[error("invalid argument: {0}")]
    Invalid(String),
    /// An internal cross-check failed (e.g. a generated automaton does not
    /// reproduce the word it was synthesized from).
    #[error("validation failed: {0}")]
    Validation(String),
    /// Unknown built-in name.
    #[error("unknown {kind} `{name}`")]
    Unknown {
        /// What kind of registry was searched.
        kind: &'static str,
        /// The requested name.
        name: String,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
