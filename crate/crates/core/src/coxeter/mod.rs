//! Finite Coxeter systems: matrices, the geometric representation, element
//! arithmetic, reduced words and braid moves.

mod matrix;
mod system;
mod word;

pub use matrix::{CoxeterMatrix, CoxeterType, GroupSpec};
pub use system::{
    CoxeterSystem, GroupElement, DEFAULT_SIZE_GUARD, DEFAULT_TOLERANCE, DEFAULT_WORD_CAP,
};
pub use word::Word;
