//! Automaton algebra over finite alphabets of letters or tuples of letters:
//! complete DFAs, NFAs (as intermediates), DFAOs, canonical minimization,
//! boolean combination, projection with padding saturation, reversal,
//! radix rank/unrank, and JSON/DOT renderings.

mod alphabet;
mod dfa;
mod dfao;
mod io;
mod nfa;
mod rank;

pub use alphabet::{Alphabet, Direction, Symbol};
pub use dfa::{BoolOp, Dfa, StateId};
pub use dfao::Dfao;
pub use io::{to_dot, AutomatonJson, TracksJson};
pub use nfa::Nfa;
pub use rank::RadixEnumerator;
