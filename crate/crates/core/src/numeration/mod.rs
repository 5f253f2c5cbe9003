//! Numeration systems: positional systems given by linear recurrences,
//! abstract numeration systems over regular languages, and addition
//! automata.

mod adder;
mod ans;
mod positional;

pub use adder::{
    adder_builtin, adder_explore, adder_validate, base_adder, one_two_adder, AdderReport, AdditionAutomaton,
    DEFAULT_CARRY_BOUND,
};
pub use ans::{Ans, Padding};
pub use positional::{digit_alphabet, parry_language, strip_leading_padding, PositionalSystem};
