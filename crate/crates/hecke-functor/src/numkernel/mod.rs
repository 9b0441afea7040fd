//! Exact scalars: cyclotomic numbers and Laurent polynomials over them.

pub mod cyclo;
pub mod laurent;

pub use cyclo::{parse_rat, rat_to_string, Cyclo, Rat};
pub use laurent::LaurentPoly;
