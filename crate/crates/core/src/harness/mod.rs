//! Randomized checks of the conductor axioms and the local-symbol laws.

mod check;
mod gen;

pub use check::{
    check_c1, check_c2, check_c6, check_ls, run_axioms, specialization_values, AxiomReport, CheckReport,
    ConductorUnderTest, Element, Failure, SymbolLaw, ALL_LAWS,
};
pub use gen::{SampleParams, Sampler};
