//! Boundary sequences of infinite words.
//!
//! The ℓ-boundary sequence of an infinite word `x` maps each `n` to the set
//! of pairs (length-ℓ prefix, length-ℓ suffix) of the length-(n+ℓ) factors
//! of `x`.  This crate computes it along three mutually cross-checking
//! routes:
//!
//! * a sliding-window oracle over word prefixes ([`boundary`]);
//! * a first-order formula compiler over addable numeration systems that
//!   turns the boundary sequence of an automatic word into an automaton
//!   with output ([`logic`], built on [`automata`] and [`numeration`]);
//! * exact rotation constructions for Sturmian words ([`sturmian`]).
//!
//! Supporting modules provide lazy infinite words ([`words`]), kernel
//! subsequences ([`kernel`]), polygonal-number words ([`polygonal`]) and the
//! executable claim suite ([`repro`]).

pub mod automata;
pub mod boundary;
pub mod error;
pub mod kernel;
pub mod logic;
pub mod numeration;
pub mod polygonal;
pub mod repro;
pub mod sturmian;
pub mod words;

pub use error::{Error, Result};
