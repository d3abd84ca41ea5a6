//! Exact arithmetic: prime fields and rationals, sparse polynomials,
//! reduced rational functions and precision-tracked Laurent series.

pub mod field;
pub mod gcd;
pub mod laurent;
pub mod poly;
pub mod ratfunc;
pub mod ring;

pub use field::{Char, FieldElem};
pub use laurent::LaurentElem;
pub use poly::{var, Monomial, MultiPoly, VarId};
pub use ratfunc::RatFunc;
pub use ring::Ring;
