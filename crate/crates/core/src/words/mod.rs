//! Lazy infinite words (morphic, automatic, periodic, characteristic,
//! generated) and factor analytics.

mod analysis;
mod morphism;
mod sets;
mod spec;
mod word;

/// Letters are small integers; words carry display names separately.
pub type Letter = u8;

pub use analysis::{
    complexity_of, complexity_profile, detect_eventual_period, factor_complexity, factor_complexity_stable, factor_set,
    factors_of, max_power, max_power_in, right_special_factors, stabilize, PowerCount, Stabilized,
};
pub use morphism::Morphism;
pub use sets::{polygonal_number, SetGenerator};
pub use spec::{WordKind, WordSpec};
pub use word::{InfiniteWord, PrefixFn, WordSource};
