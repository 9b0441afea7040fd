//! Finite groups by multiplication table and their complex characters.

pub mod chars;
pub mod group;

pub use chars::{
    clifford_identity_check, hom_mult, induce, induce_any, inner, irreducibles, is_linear_character, restrict, CharTable, ClassFunction,
    CliffordReport, Induced,
};
pub use group::FiniteGroup;
