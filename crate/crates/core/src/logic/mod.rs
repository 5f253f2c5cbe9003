//! First-order formulas over natural numbers compiled to automata over an
//! addable numeration system, boundary sequences of automatic words as
//! DFAOs, and DFAO-to-morphism conversion.

mod ast;
mod boundary;
mod compile;
mod morphic;
mod parser;
mod sequences;

pub use ast::{Cmp, Formula, Linear, Term};
pub use boundary::{boundary_dfao, factors, pair_formula, CompiledBoundary, INVALID_OUTPUT};
pub use compile::{track_dfao, CompiledPredicate, Compiler, PredicateJson, DEFAULT_STATE_BUDGET};
pub use morphic::{dfao_to_morphic, parse_named_morphism, renaming, MorphicPresentation};
pub use parser::{parse_formula, parse_term};
pub use sequences::{builtin_sequence, BUILTIN_SEQUENCES};
