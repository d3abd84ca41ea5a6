//! Exact computation of ramification invariants of Witt vectors over
//! Laurent-series fields `K((t))`, `K = F_p(z_1, …, z_m)`, and of differential
//! forms over `Q(z_1, …, z_m)((t))`.

pub mod algebra;
pub mod arith;
pub mod char0;
pub mod conductor;
pub mod error;
pub mod filtration;
pub mod harness;
pub mod parse;
pub mod serial;
pub mod symbol;
pub mod witt;

pub use error::{Error, Result};
