//! Sparse multivariate and dense univariate polynomials.

mod monomial;
mod multi;
mod parse;
mod uni;

pub use monomial::{Monomial, MonomialOrder};
pub use multi::MultiPoly;
pub use parse::parse;
pub use uni::UniPoly;
