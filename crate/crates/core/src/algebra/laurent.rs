//! Truncated Laurent series in `t` with rational-function coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::field::{Char, FieldElem};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// `Σ c_e t^e + O(t^prec)`; `prec = None` marks a finitely supported (exact) element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentElem {
    ch: Char,
    coeffs: BTreeMap<i64, RatFunc>,
    prec: Option<i64>,
}

const INF: i64 = i64::MAX / 4;

fn fin(p: Option<i64>) -> i64 {
    p.unwrap_or(INF)
}

fn opt(p: i64) -> Option<i64> {
    (p < INF).then_some(p)
}

impl LaurentElem {
    pub fn zero(ch: Char) -> Self {
        LaurentElem { ch, coeffs: BTreeMap::new(), prec: None }
    }

    pub fn one(ch: Char) -> Self {
        Self::constant(RatFunc::one(ch))
    }

    /// `O(t^prec)`.
    pub fn big_o(ch: Char, prec: i64) -> Self {
        LaurentElem { ch, coeffs: BTreeMap::new(), prec: Some(prec) }
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: RatFunc, e: i64) -> Self {
        let ch = c.characteristic();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentElem { ch, coeffs, prec: None }
    }

    pub fn t_pow(e: i64, ch: Char) -> Self {
        Self::monomial(RatFunc::one(ch), e)
    }

    pub fn from_terms(ch: Char, terms: impl IntoIterator<Item = (i64, RatFunc)>, prec: Option<i64>) -> Self {
        let mut out = LaurentElem { ch, coeffs: BTreeMap::new(), prec };
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: i64, c: RatFunc) {
        if c.is_zero() || e >= fin(self.prec) {
            return;
        }
        match self.coeffs.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn characteristic(&self) -> Char {
        self.ch
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Exact zero (not merely zero up to precision).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_none()
    }

    /// No known nonzero coefficient.
    pub fn is_known_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&i64, &RatFunc)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Pole floor: the lowest stored exponent, or the precision for an unknown zero.
    pub fn vmin(&self) -> Option<i64> {
        self.valuation().or(self.prec)
    }

    /// Largest pole order, `0` for integral elements.
    pub fn pole_order(&self) -> i64 {
        self.valuation().map_or(0, |v| (-v).max(0))
    }

    pub fn is_integral(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }

    pub fn coeff(&self, e: i64) -> RatFunc {
        self.coeffs.get(&e).cloned().unwrap_or_else(|| RatFunc::zero(self.ch))
    }

    /// Coefficient of `t^e`, failing if `e` lies beyond the known window.
    pub fn coeff_checked(&self, e: i64) -> Result<RatFunc> {
        if e >= fin(self.prec) {
            return Err(Error::InsufficientPrecision { needed: e + 1, have: fin(self.prec) });
        }
        Ok(self.coeff(e))
    }

    /// Forgets every coefficient at or beyond `t^prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        let p = prec.min(fin(self.prec));
        LaurentElem { ch: self.ch, coeffs: self.coeffs.range(..p).map(|(e, c)| (*e, c.clone())).collect(), prec: Some(p) }
    }

    /// Terms with exponent `< bound`, as an exact element.
    pub fn head(&self, bound: i64) -> Self {
        LaurentElem { ch: self.ch, coeffs: self.coeffs.range(..bound).map(|(e, c)| (*e, c.clone())).collect(), prec: None }
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = opt(fin(self.prec).min(fin(o.prec)));
        let (big, small) = if self.coeffs.len() >= o.coeffs.len() { (self, o) } else { (o, self) };
        let mut out = big.truncate_opt(prec);
        for (e, c) in &small.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }

    fn truncate_opt(&self, prec: Option<i64>) -> Self {
        match prec {
            None => self.clone(),
            Some(p) => self.truncate(p),
        }
    }

    pub fn neg(&self) -> Self {
        LaurentElem { ch: self.ch, coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect(), prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return LaurentElem::zero(self.ch);
        }
        LaurentElem { ch: self.ch, coeffs: self.coeffs.iter().map(|(e, d)| (*e, d.mul(c))).collect(), prec: self.prec }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        let c = FieldElem::from_i64(k, self.ch);
        if c.is_zero() {
            return LaurentElem::zero(self.ch);
        }
        LaurentElem { ch: self.ch, coeffs: self.coeffs.iter().map(|(e, d)| (*e, d.scale(&c))).collect(), prec: self.prec }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentElem {
            ch: self.ch,
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            prec: self.prec.map(|p| p + k),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return LaurentElem::zero(self.ch);
        }
        let va = fin(self.vmin());
        let vb = fin(o.vmin());
        let pa = self.prec.map_or(INF, |p| p.saturating_add(vb));
        let pb = o.prec.map_or(INF, |p| p.saturating_add(va));
        let prec = opt(pa.min(pb));
        let bound = fin(prec);
        let mut out = LaurentElem { ch: self.ch, coeffs: BTreeMap::new(), prec };
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &o.coeffs {
                if ea + eb >= bound {
                    break;
                }
                out.add_term(ea + eb, ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        if e == 0 {
            return LaurentElem::one(self.ch);
        }
        if self.ch != 0 && e % self.ch as u64 == 0 {
            return self.frob().pow(e / self.ch as u64);
        }
        if self.coeffs.len() == 1 && self.is_exact() {
            let (k, c) = self.coeffs.iter().next().unwrap();
            return LaurentElem::monomial(c.pow(e), k * e as i64);
        }
        let mut base = self.clone();
        let mut acc = LaurentElem::one(self.ch);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Coefficientwise `p`-th power with `t ↦ t^p` (characteristic `p`).
    pub fn frob(&self) -> Self {
        let p = self.ch as i64;
        assert!(p != 0, "frobenius needs positive characteristic");
        LaurentElem {
            ch: self.ch,
            coeffs: self.coeffs.iter().map(|(e, c)| (e * p, c.frob())).collect(),
            prec: self.prec.map(|q| q * p),
        }
    }

    /// `1/self + O(t^prec)`.
    pub fn invert(&self, prec: i64) -> Result<Self> {
        let Some(v) = self.valuation() else { return Err(Error::ZeroInput) };
        let c0 = self.coeff(v);
        let inv0 = c0.inv()?;
        if self.is_exact() && self.coeffs.len() == 1 {
            return Ok(LaurentElem::monomial(inv0, -v));
        }
        let have = fin(self.prec).saturating_sub(2 * v);
        if prec > have {
            return Err(Error::InsufficientPrecision { needed: prec, have });
        }
        let mut out: BTreeMap<i64, RatFunc> = BTreeMap::new();
        let neg_inv0 = inv0.neg();
        let higher: Vec<(i64, &RatFunc)> = self.coeffs.range(v + 1..).map(|(e, c)| (e - v, c)).collect();
        let mut k = -v;
        while k < prec {
            let val = if k == -v {
                inv0.clone()
            } else {
                let mut s = RatFunc::zero(self.ch);
                for &(j, a) in &higher {
                    if k - j < -v {
                        break;
                    }
                    if let Some(b) = out.get(&(k - j)) {
                        s = s.add(&a.mul(b));
                    }
                }
                s.mul(&neg_inv0)
            };
            if !val.is_zero() {
                out.insert(k, val);
            }
            k += 1;
        }
        Ok(LaurentElem { ch: self.ch, coeffs: out, prec: Some(prec) })
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        LaurentElem::from_terms(self.ch, self.coeffs.iter().map(|(e, c)| (*e, f(c))), self.prec)
    }

    pub fn try_map_coeffs(&self, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for (e, c) in &self.coeffs {
            terms.push((*e, f(c)?));
        }
        Ok(LaurentElem::from_terms(self.ch, terms, self.prec))
    }

    /// Agreement on the window where both are known.
    pub fn agrees_with(&self, o: &Self) -> bool {
        let bound = fin(self.prec).min(fin(o.prec));
        self.coeffs.range(..bound).eq(o.coeffs.range(..bound))
    }
}

impl fmt::Display for LaurentElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let simple = c.is_polynomial() && c.num().num_terms() == 1 && !cs.starts_with('-');
            let cs = if simple { cs } else { format!("({cs})") };
            match *e {
                0 => write!(f, "{cs}")?,
                1 => write!(f, "{cs}*t")?,
                e => write!(f, "{cs}*t^{e}")?,
            }
        }
        match self.prec {
            Some(p) => {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "O(t^{p})")
            }
            None if first => write!(f, "0"),
            None => Ok(()),
        }
    }
}
