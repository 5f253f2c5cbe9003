//! Sturmian words: exact slopes, continued fractions and standard words,
//! boundary sets from rotations, the sliding block code from factors of
//! length 2ℓ to boundary sets, and the morphic presentation of the shifted
//! boundary sequence.

mod blockcode;
mod fraction;
mod quadratic;
mod rotation;
mod slope;

pub use blockcode::{
    block_code_table, first_letter_recurrence, morphism_h, BlockCode, BoundaryMorphism, FirstLetterReport,
};
pub use fraction::ContinuedFraction;
pub use quadratic::QuadraticNumber;
pub use rotation::{boundary_first, constellation, Constellation, FactorPartition};
pub use slope::Slope;
