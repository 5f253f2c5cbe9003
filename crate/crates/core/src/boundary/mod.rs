//! The ℓ-boundary and (k, ℓ)-boundary oracle, boundary alphabets and
//! boundary words.

mod oracle;
mod set;

pub use oracle::{
    alphabet_census, boundary_set, boundary_set_kl, boundary_sets, boundary_sets_kl, boundary_word, BoundarySets,
    BoundaryWord, CensusEntry, PrefixPolicy, DEFAULT_MAX_PREFIX, DEFAULT_MAX_SPARSE,
};
pub use set::{letter_name, pre_letter_name, BoundaryAlphabet, BoundarySet};
