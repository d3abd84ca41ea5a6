//! Conductors computed by symbol descent: Kato–Russell (F-saturated
//! filtration), Artin conductors of Artin–Schreier–Witt characters, the
//! `α_p`-torsor conductor and the Rosenlicht–Serre conductor.

mod alpha_p;
mod artin;
mod kr;
mod rose;

pub use alpha_p::{alpha_p_conductor, alpha_p_reduce};
pub use artin::{artin_conductor, asw_reduce, is_asw_trivial, AswClass, Triviality};
pub use kr::{kr_certificate, kr_conductor, recompose_certificate};
pub use rose::rose_conductor;

use serde::Serialize;

use crate::algebra::{var, LaurentElem, RatFunc};
use crate::error::Result;
use crate::symbol::{local_symbol, CoeffField};
use crate::witt::WittVec;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConductorKind {
    Kr,
    Artin,
    AlphaP,
    Rose,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Zero,
    Nonzero,
    Trivial,
    Nontrivial,
    Undecided,
}

impl Verdict {
    /// Whether the test allows the descent to continue.
    pub fn vanishes(self) -> bool {
        matches!(self, Verdict::Zero | Verdict::Trivial)
    }
}

/// One symbol `(a, 1 - x t^j)` evaluated during a descent.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SymbolTest {
    pub sigma: CoeffField,
    pub unit: String,
    pub value: WittVec<RatFunc>,
    pub verdict: Verdict,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DescentStep {
    pub level: u64,
    pub tests: Vec<SymbolTest>,
}

impl DescentStep {
    pub fn vanishes(&self) -> bool {
        self.tests.iter().all(|t| t.verdict.vanishes())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ConductorReport {
    pub value: u64,
    pub kind: ConductorKind,
    pub descent_trace: Vec<DescentStep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_rep: Option<WittVec<LaurentElem>>,
    /// Bounds `[lower, upper]` when the value could not be pinned down.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<(u64, u64)>,
    /// Pieces `a_r` with `a = Σ F^r(a_r)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<WittVec<LaurentElem>>>,
}

impl ConductorReport {
    fn bare(value: u64, kind: ConductorKind) -> Self {
        ConductorReport { value, kind, descent_trace: Vec::new(), reduced_rep: None, interval: None, certificate: None }
    }
}

/// `1 - x t^j` over `K(x)`.
pub fn descent_unit(p: u32, j: i64) -> LaurentElem {
    LaurentElem::from_terms(p, [(0, RatFunc::one(p)), (j, RatFunc::var(var::X, p).neg())], None)
}

/// Number of distinct `z`-variables among the coefficients of `a`.
pub fn z_count(a: &WittVec<LaurentElem>) -> usize {
    let mut zs = std::collections::BTreeSet::new();
    for c in a.comps() {
        for (_, r) in c.terms() {
            zs.extend(r.num().vars().into_iter().chain(r.den().vars()).filter(|v| var::is_z(*v)));
        }
    }
    zs.len()
}

/// Coefficient fields whose symbols decide the descent at level `r`: `σ_0`
/// alone when `p ∤ r`, `r = p = 2` or there are no `z`-variables, and
/// `σ_0`, `σ_1` with `e = ord_p(r)` otherwise.
pub fn descent_fields(p: u32, r: u64, m: usize) -> Vec<CoeffField> {
    let divisible = r % p as u64 == 0;
    if !divisible || (r == 2 && p == 2) || m == 0 {
        vec![CoeffField::Sigma0]
    } else {
        let e = crate::arith::ord_p(r as i64, p);
        vec![CoeffField::Sigma0, CoeffField::Sigma1 { e }]
    }
}

fn symbol_tests(
    a: &WittVec<LaurentElem>,
    r: u64,
    fields: &[CoeffField],
    verdict: impl Fn(&WittVec<RatFunc>) -> Verdict,
) -> Result<DescentStep> {
    let p = a.p();
    let j = r as i64 - 1;
    let f = descent_unit(p, j);
    let mut tests = Vec::new();
    for &sigma in fields {
        let value = local_symbol(a, &f, sigma)?;
        let v = verdict(&value);
        tests.push(SymbolTest { sigma, unit: format!("1 - x*t^{j}"), value, verdict: v });
        if !v.vanishes() {
            break;
        }
    }
    Ok(DescentStep { level: r, tests })
}
