//! Twisted affine Hecke algebras and their graded versions.

pub mod ad;
pub mod bernstein;
pub mod element;
pub mod graded;
pub mod im;
pub mod intermediate;
pub mod spec;
pub mod theta;

pub use element::{HKey, HeckeElement};
pub use im::ImAlgebra;
pub use spec::{GammaGroup, HeckeSpec};
pub use theta::ThetaPoly;
