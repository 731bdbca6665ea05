//! Ideal membership through hyperplane cross sections `x1 = α`, and
//! reconstruction of ideals from finitely many of them.
//!
//! All arithmetic is exact, over ℚ or a prime field `F_p`. The crate provides
//!
//! * bounded-degree linear-system membership tests and the slice-wise tests
//!   that reduce membership in `n` variables to membership in `n - 1`,
//! * the exact bound calculators that size those tests,
//! * reconstruction of a principal ideal from `2d` sectional generators, and
//! * an independent Buchberger-based oracle used to cross-check everything.

pub mod bounds;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod membership;
pub mod poly;
pub mod random;
pub mod reconstruct;
pub mod slicing;

pub use error::{Error, Result};
pub use field::{primitive_root_of_unity, FieldElement, FieldSpec};
pub use ideal::Ideal;
pub use poly::{parse, Monomial, MonomialOrder, MultiPoly, UniPoly};
