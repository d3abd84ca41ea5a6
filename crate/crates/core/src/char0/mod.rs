//! Characteristic 0: differential forms over `K((t))`, `K = Q(z_1, …, z_m)`,
//! the de Rham conductor, its residue symbols and the irregularity of rank-1
//! connections.

mod form;

pub use form::{dlog, DiffForm, Wedge};

use crate::algebra::{var, LaurentElem, RatFunc};
use crate::error::{Error, Result};

fn floor(f: &LaurentElem) -> Result<i64> {
    match f.vmin() {
        Some(v) if f.valuation().is_some() || v > 0 => Ok(v),
        Some(v) => Err(Error::InsufficientPrecision { needed: 1, have: v }),
        None => Ok(i64::MAX),
    }
}

/// Whether `a ∈ t^{-(n-1)} Ω^q_{O_L}(log)` for `n ≥ 1`, or `a ∈ Ω^q_{O_L}` for `n = 0`.
pub fn cdr_member(a: &DiffForm, n: u64) -> Result<bool> {
    for (w, f) in a.terms() {
        let v = floor(f)?;
        let bound = if n == 0 { w.dlog_t as i64 } else { 1 - n as i64 };
        if v < bound {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `c^dR(a)`: `0` for regular forms, otherwise the least `n ≥ 1` with
/// `a ∈ t^{-(n-1)} Ω^q_{O_L}(log)`.
pub fn cdr_conductor(a: &DiffForm) -> Result<u64> {
    if cdr_member(a, 0)? {
        return Ok(0);
    }
    let mut low = 0;
    for (_, f) in a.terms() {
        low = low.min(floor(f)?);
    }
    Ok((1 - low) as u64)
}

/// `Res_t`: the `t^0` coefficient of the `dlog t` part, with `dlog t` removed.
pub fn residue(a: &DiffForm) -> Result<DiffForm> {
    let ch = a.characteristic();
    let q = a.degree().checked_sub(1).ok_or_else(|| Error::Invalid("residue of a function".into()))?;
    let mut terms = Vec::new();
    for (w, f) in a.terms() {
        if w.dlog_t {
            let c = f.coeff_checked(0)?;
            terms.push((Wedge { vars: w.vars.clone(), dlog_t: false }, LaurentElem::constant(c)));
        }
    }
    DiffForm::from_terms(ch, q, terms)
}

/// `Res_t(a ∧ dlog(1 - x t^r))`, a form over `K(x)`.
pub fn cdr_symbol(a: &DiffForm, r: i64) -> Result<DiffForm> {
    if r < 1 {
        return Err(Error::Invalid(format!("symbol level {r} must be positive")));
    }
    if a.vars().contains(&var::X) {
        return Err(Error::Invalid("x is reserved for the symbol unit".into()));
    }
    let ch = a.characteristic();
    let pole = a.valuation().map_or(0, |v| (-v).max(0));
    let unit = LaurentElem::from_terms(ch, [(0, RatFunc::one(ch)), (r, RatFunc::var(var::X, ch).neg())], None);
    let w = dlog(&unit, pole + 2)?;
    residue(&a.wedge(&w))
}

/// A rank-1 connection `d + ω` up to gauge, given by its 1-form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConnClass {
    omega: DiffForm,
}

impl ConnClass {
    pub fn new(omega: DiffForm) -> Result<Self> {
        if omega.degree() != 1 {
            return Err(Error::ShapeMismatch(format!("connection form of degree {}", omega.degree())));
        }
        Ok(ConnClass { omega })
    }

    pub fn omega(&self) -> &DiffForm {
        &self.omega
    }

    /// Gauge transform by `f`: `ω + dlog f`.
    pub fn twist(&self, f: &LaurentElem, prec: i64) -> Result<Self> {
        ConnClass::new(self.omega.add(&dlog(f, prec)?)?)
    }
}

/// Least `n ≥ 0` with `ω ∈ t^{-n} Ω^1_{O_L}(log)`.
pub fn irregularity(e: &ConnClass) -> Result<u64> {
    let mut low = 0;
    for (_, f) in e.omega.terms() {
        low = low.min(floor(f)?);
    }
    Ok((-low) as u64)
}

/// `0` when `ω ∈ Ω^1_{O_L} + Z·dlog t`, otherwise `irr + 1`.
pub fn conn_conductor(e: &ConnClass) -> Result<u64> {
    let irr = irregularity(e)?;
    if irr == 0 {
        let res = e.omega.coeff(&Wedge::dlog_t()).coeff_checked(0)?;
        let integer = res.constant_value().and_then(|c| c.as_integer()).is_some();
        if integer {
            return Ok(0);
        }
    }
    Ok(irr + 1)
}

/// `dω = 0`, up to the known precision of the coefficients.
pub fn is_integrable(omega: &DiffForm) -> bool {
    omega.d().is_known_zero()
}
