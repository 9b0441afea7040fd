//! Exact combinatorics of based root data, affine and graded Hecke algebras,
//! component groups of type-A toy L-parameters, and the pullback
//! decomposition along homomorphisms of reductive groups.
//!
//! Everything is exact: scalars live in cyclotomic fields and Hecke
//! coefficients are Laurent polynomials over them.

pub mod numkernel;
pub mod rootdata;
pub mod weyl;
pub mod hecke;
pub mod finrep;
pub mod lparam;
pub mod functor;
pub mod acceptance;

use thiserror::Error;

/// Library error. `Validation` means malformed or out-of-range input;
/// `Computation` means a well-formed request that cannot be carried out.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("computation error: {0}")]
    Computation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
