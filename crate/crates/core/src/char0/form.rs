use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{var, Char, LaurentElem, VarId};
use crate::error::{Error, Result};

/// Sort key of the `dlog t` slot; it always comes after every `dv`.
const DLOG_T: VarId = VarId::MAX;

/// A wedge `dv_1 ∧ … ∧ dv_k [∧ dlog t]` with `v_1 < … < v_k`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Wedge {
    pub vars: Vec<VarId>,
    pub dlog_t: bool,
}

impl Wedge {
    pub fn one() -> Self {
        Wedge::default()
    }

    pub fn dvar(v: VarId) -> Self {
        Wedge { vars: vec![v], dlog_t: false }
    }

    pub fn dlog_t() -> Self {
        Wedge { vars: Vec::new(), dlog_t: true }
    }

    pub fn degree(&self) -> usize {
        self.vars.len() + self.dlog_t as usize
    }

    fn factors(&self) -> impl Iterator<Item = VarId> + '_ {
        self.vars.iter().copied().chain(self.dlog_t.then_some(DLOG_T))
    }

    /// `self ∧ o` as a sign and a normalized wedge, or `None` when it vanishes.
    pub fn wedge(&self, o: &Wedge) -> Option<(bool, Wedge)> {
        let mut seq: Vec<VarId> = self.factors().chain(o.factors()).collect();
        let mut odd = false;
        for i in 1..seq.len() {
            let mut j = i;
            while j > 0 && seq[j - 1] > seq[j] {
                seq.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if seq.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let dlog_t = seq.last() == Some(&DLOG_T);
        if dlog_t {
            seq.pop();
        }
        Some((odd, Wedge { vars: seq, dlog_t }))
    }
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.vars.iter().map(|v| format!("d({})", var::name(*v))).collect();
        if self.dlog_t {
            parts.push("dlog(t)".into());
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("^"))
        }
    }
}

/// A `q`-form `Σ g_I ω_I` over `K((t))` in the logarithmic basis; a `dt`
/// coefficient `g` is stored as `(g t)·dlog t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffForm {
    ch: Char,
    q: usize,
    terms: BTreeMap<Wedge, LaurentElem>,
}

impl DiffForm {
    pub fn zero(ch: Char, q: usize) -> Self {
        DiffForm { ch, q, terms: BTreeMap::new() }
    }

    pub fn function(f: LaurentElem) -> Self {
        Self::monomial(f, Wedge::one())
    }

    pub fn monomial(f: LaurentElem, w: Wedge) -> Self {
        let mut out = Self::zero(f.characteristic(), w.degree());
        if !f.is_zero() {
            out.terms.insert(w, f);
        }
        out
    }

    /// `dv` for a coefficient variable `v`.
    pub fn dvar(v: VarId, ch: Char) -> Self {
        Self::monomial(LaurentElem::one(ch), Wedge::dvar(v))
    }

    pub fn dlog_t(ch: Char) -> Self {
        Self::monomial(LaurentElem::one(ch), Wedge::dlog_t())
    }

    /// `dt = t·dlog t`.
    pub fn dt(ch: Char) -> Self {
        Self::monomial(LaurentElem::t_pow(1, ch), Wedge::dlog_t())
    }

    pub fn from_terms(ch: Char, q: usize, terms: impl IntoIterator<Item = (Wedge, LaurentElem)>) -> Result<Self> {
        let mut out = Self::zero(ch, q);
        for (w, f) in terms {
            if w.degree() != q {
                return Err(Error::ShapeMismatch(format!("wedge {w} in a {q}-form")));
            }
            out.add_term(w, f);
        }
        Ok(out)
    }

    fn add_term(&mut self, w: Wedge, f: LaurentElem) {
        let s = match self.terms.remove(&w) {
            Some(g) => g.add(&f),
            None => f,
        };
        if !s.is_zero() {
            self.terms.insert(w, s);
        }
    }

    pub fn characteristic(&self) -> Char {
        self.ch
    }

    pub fn degree(&self) -> usize {
        self.q
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Wedge, &LaurentElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Wedge) -> LaurentElem {
        self.terms.get(w).cloned().unwrap_or_else(|| LaurentElem::zero(self.ch))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// No known nonzero coefficient (truncated coefficients may remain).
    pub fn is_known_zero(&self) -> bool {
        self.terms.values().all(|f| f.is_known_zero())
    }

    pub fn is_exact(&self) -> bool {
        self.terms.values().all(|f| f.is_exact())
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.q != o.q {
            return Err(Error::ShapeMismatch(format!("degrees {} and {}", self.q, o.q)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        for (w, f) in &o.terms {
            out.add_term(w.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        DiffForm { ch: self.ch, q: self.q, terms: self.terms.iter().map(|(w, f)| (w.clone(), f.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    /// Multiplication by a function.
    pub fn scale(&self, g: &LaurentElem) -> Self {
        let mut out = Self::zero(self.ch, self.q);
        for (w, f) in &self.terms {
            out.add_term(w.clone(), f.mul(g));
        }
        out
    }

    pub fn wedge(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.ch, self.q + o.q);
        for (w1, f1) in &self.terms {
            for (w2, f2) in &o.terms {
                if let Some((odd, w)) = w1.wedge(w2) {
                    let g = f1.mul(f2);
                    out.add_term(w, if odd { g.neg() } else { g });
                }
            }
        }
        out
    }

    /// Exterior derivative: `d(f ω_I) = Σ_v ∂_v f dv ∧ ω_I + t∂_t f dlog t ∧ ω_I`.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(self.ch, self.q + 1);
        for (w, f) in &self.terms {
            for (dw, g) in differential(f) {
                if let Some((odd, w2)) = dw.wedge(w) {
                    out.add_term(w2, if odd { g.neg() } else { g });
                }
            }
        }
        out
    }

    /// Least `t`-valuation over all coefficients; `None` for the zero form.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.values().filter_map(|f| f.vmin()).min()
    }

    /// Terms with a `t`-exponent below `bound`, as an exact form.
    pub fn head(&self, bound: i64) -> Self {
        let mut out = Self::zero(self.ch, self.q);
        for (w, f) in &self.terms {
            out.add_term(w.clone(), f.head(bound));
        }
        out
    }

    /// Coefficient variables occurring in the form.
    pub fn vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        for (w, f) in &self.terms {
            out.extend(w.vars.iter().copied());
            for (_, c) in f.terms() {
                out.extend(c.num().vars());
                out.extend(c.den().vars());
            }
        }
        out
    }
}

/// `(dw, g)` pairs with `df = Σ g dw`.
fn differential(f: &LaurentElem) -> Vec<(Wedge, LaurentElem)> {
    let ch = f.characteristic();
    let mut vars = BTreeSet::new();
    for (_, c) in f.terms() {
        vars.extend(c.num().vars());
        vars.extend(c.den().vars());
    }
    let mut out: Vec<(Wedge, LaurentElem)> =
        vars.into_iter().map(|v| (Wedge::dvar(v), f.map_coeffs(|c| c.derivative(v)))).collect();
    let tdt = LaurentElem::from_terms(ch, f.terms().map(|(e, c)| (*e, c.mul_int(*e))), f.prec());
    out.push((Wedge::dlog_t(), tdt));
    out
}

/// `dlog f = df / f`, with the unit part expanded below `t^prec`.
pub fn dlog(f: &LaurentElem, prec: i64) -> Result<DiffForm> {
    let v = f.valuation().ok_or(Error::ZeroInput)?;
    if f.prec().is_none() && f.num_terms() == 1 {
        // exact for c t^v: dc/c + v dlog t
        let inv = LaurentElem::monomial(f.coeff(v).inv()?, -v);
        return Ok(DiffForm::function(f.clone()).d().scale(&inv));
    }
    let inv = f.invert(prec - v)?;
    let df = DiffForm::function(f.clone()).d();
    let mut out = df.scale(&inv);
    for g in out.terms.values_mut() {
        *g = g.truncate(prec);
    }
    Ok(out)
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, g)| if w.degree() == 0 { format!("({g})") } else { format!("({g})*{w}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
