//! Truncated `p`-typical Witt vectors over a characteristic-`p` ring.
//!
//! `F` is the componentwise `p`-th power `W_n(φ)`; the length-lowering
//! Witt-theoretic Frobenius is [`witt_frobenius_shift`].

mod canon;
mod ghost;
mod ps;
mod teich;
pub mod universal;

use std::collections::HashMap;
use std::fmt;

pub use canon::{canonical_form, recompose, CanonForm};
pub use ghost::GhostVec;
pub use ps::{ps_decode, ps_encode, ps_mul, ps_normal_form};
pub use teich::{
    recompose_monomials, teich_monomials_at, teich_monomials_weighted, to_teich_monomials, weighted_precisions, TeichMonomial,
};

use crate::algebra::{LaurentElem, RatFunc, Ring};
use crate::arith::pow_p;
use crate::error::{Error, Result};
use universal::{compiled, eval, WittOp};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WittVec<R> {
    p: u32,
    comps: Vec<R>,
}

impl<R: Ring> WittVec<R> {
    pub fn new(p: u32, comps: Vec<R>) -> Self {
        assert!(!comps.is_empty(), "Witt vectors have length at least 1");
        assert!(comps.iter().all(|c| c.characteristic() == p), "components must live in characteristic p");
        WittVec { p, comps }
    }

    pub fn zero(p: u32, n: usize, like: &R) -> Self {
        WittVec { p, comps: vec![like.zero_like(); n] }
    }

    pub fn one(p: u32, n: usize, like: &R) -> Self {
        Self::teichmuller(p, n, like.one_like())
    }

    /// `[c] = (c, 0, …, 0)`.
    pub fn teichmuller(p: u32, n: usize, c: R) -> Self {
        let mut comps = vec![c.zero_like(); n];
        comps[0] = c;
        WittVec { p, comps }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn comps(&self) -> &[R] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &R {
        &self.comps[i]
    }

    pub fn into_comps(self) -> Vec<R> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.p != o.p || self.len() != o.len() {
            return Err(Error::ShapeMismatch(format!(
                "W_{}(p={}) against W_{}(p={})",
                self.len(),
                self.p,
                o.len(),
                o.p
            )));
        }
        Ok(())
    }

    fn binary(&self, o: &Self, op: WittOp) -> Self {
        let n = self.len();
        let polys = compiled(self.p, n, op);
        let zero = self.comps[0].zero_like();
        let mut slots: Vec<Option<&R>> = Vec::with_capacity(2 * n);
        for k in 0..n {
            slots.push((!self.comps[k].is_zero()).then_some(&self.comps[k]));
            slots.push(if op == WittOp::Neg { None } else { (!o.comps[k].is_zero()).then_some(&o.comps[k]) });
        }
        let mut cache = HashMap::new();
        let comps = polys[..n].iter().map(|poly| eval(poly, &slots, &zero, &mut cache)).collect();
        WittVec { p: self.p, comps }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(o.clone());
        }
        Ok(self.binary(o, WittOp::Add))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if o.is_zero() {
            return Ok(self.clone());
        }
        Ok(self.binary(o, WittOp::Sub))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(self.p, self.len(), &self.comps[0]));
        }
        Ok(self.binary(o, WittOp::Mul))
    }

    /// Panics on shape mismatch; see [`Self::try_add`].
    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("Witt vector shapes must match")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("Witt vector shapes must match")
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("Witt vector shapes must match")
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.binary(self, WittOp::Neg)
    }

    /// Componentwise `p`-th power.
    pub fn frob(&self) -> Self {
        self.map(|c| c.frob())
    }

    pub fn frob_pow(&self, h: u32) -> Self {
        (0..h).fold(self.clone(), |acc, _| acc.frob())
    }

    /// `V^s`: shifts right by `s`, growing the length by `s`.
    pub fn verschiebung(&self, s: usize) -> Self {
        let mut comps = vec![self.comps[0].zero_like(); s];
        comps.extend(self.comps.iter().cloned());
        WittVec { p: self.p, comps }
    }

    /// `V^s` followed by truncation back to the current length.
    pub fn v_within(&self, s: usize) -> Self {
        self.verschiebung(s).truncate(self.len())
    }

    /// Keeps the first `len` components (`R^{n-len}`).
    pub fn truncate(&self, len: usize) -> Self {
        assert!((1..=self.len()).contains(&len), "restriction length out of range");
        WittVec { p: self.p, comps: self.comps[..len].to_vec() }
    }

    /// `R`: drops the last component.
    pub fn restriction(&self) -> Result<Self> {
        if self.len() < 2 {
            return Err(Error::ShapeMismatch("restriction of a length-1 Witt vector".into()));
        }
        Ok(self.truncate(self.len() - 1))
    }

    /// Zero-padded extension to a longer length (not a ring map; used for bookkeeping).
    pub fn pad(&self, len: usize) -> Self {
        let mut comps = self.comps.clone();
        comps.resize(len.max(self.len()), self.comps[0].zero_like());
        WittVec { p: self.p, comps }
    }

    /// `[u]·a`.
    pub fn scale_teich(&self, u: &R) -> Self {
        let mut pw = u.clone();
        let mut comps = Vec::with_capacity(self.len());
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                pw = pw.frob();
            }
            comps.push(c.mul(&pw));
        }
        WittVec { p: self.p, comps }
    }

    /// `k·a` for an integer `k`.
    pub fn mul_int(&self, k: i64) -> Self {
        let n = self.len();
        let modulus = (self.p as i64).pow(n as u32);
        let mut k = k.rem_euclid(modulus);
        let mut acc = Self::zero(self.p, n, &self.comps[0]);
        let mut pa = self.clone();
        while k > 0 {
            let d = k % self.p as i64;
            for _ in 0..d {
                acc = acc.add(&pa);
            }
            k /= self.p as i64;
            if k > 0 {
                pa = pa.frob().v_within(1);
            }
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> WittVec<S> {
        WittVec { p: self.p, comps: self.comps.iter().map(f).collect() }
    }

    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<WittVec<S>> {
        let comps = self.comps.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(WittVec { p: self.p, comps })
    }
}

/// The Witt-theoretic Frobenius `W_{n+1} → W_n` (in characteristic `p`, `R ∘ W(φ)`).
pub fn witt_frobenius_shift<R: Ring>(a: &WittVec<R>) -> Result<WittVec<R>> {
    a.frob().restriction()
}

impl WittVec<LaurentElem> {
    /// Embeds a Witt vector over the coefficient field as constant series.
    pub fn from_constants(a: &WittVec<RatFunc>) -> Self {
        a.map(|c| LaurentElem::constant(c.clone()))
    }

    pub fn teich_monomial(p: u32, n: usize, c: RatFunc, i: i64) -> Self {
        Self::teichmuller(p, n, LaurentElem::monomial(c, i))
    }

    /// All components have no negative powers of `t`.
    pub fn is_integral(&self) -> bool {
        self.comps.iter().all(|c| c.is_integral())
    }

    pub fn is_exact(&self) -> bool {
        self.comps.iter().all(|c| c.is_exact())
    }

    /// Largest pole order among the components.
    pub fn pole_depth(&self) -> i64 {
        self.comps.iter().map(|c| c.pole_order()).max().unwrap_or(0)
    }

    /// `max_u p^{n-1-u} · (pole order of a_u)`, the largest `t`-weight of a
    /// pole once each component is read in the last Witt slot.
    pub fn weighted_pole(&self) -> i64 {
        let n = self.len();
        self.comps
            .iter()
            .enumerate()
            .map(|(u, c)| pow_p(self.p, n - 1 - u) * c.pole_order())
            .max()
            .unwrap_or(0)
    }

    pub fn truncate_series(&self, prec: i64) -> Self {
        self.map(|c| c.truncate(prec))
    }

    /// Minimal precision over the components.
    pub fn prec(&self) -> Option<i64> {
        self.comps.iter().filter_map(|c| c.prec()).min()
    }
}

impl<R: Ring + fmt::Display> fmt::Display for WittVec<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W[")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}
