//! Universal Witt polynomials, derived from ghost components over `Q` and
//! reduced mod `p`.
//!
//! Variable `X_u` has evaluation slot `2u`, `Y_u` has slot `2u + 1`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::algebra::{FieldElem, MultiPoly, Ring, VarId};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum WittOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// One term `coef * Π slot^exp` with `coef ∈ [1, p)`.
#[derive(Clone, Debug)]
pub struct CompiledTerm {
    pub coef: u32,
    pub factors: SmallVec<[(usize, u32); 4]>,
}

pub type CompiledPoly = Vec<CompiledTerm>;

type Table = HashMap<(u32, WittOp), Arc<Vec<CompiledPoly>>>;

fn table() -> &'static RwLock<Table> {
    static TABLE: OnceLock<RwLock<Table>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn x_id(u: usize) -> VarId {
    (2 * u + 1) as VarId
}

fn y_id(u: usize) -> VarId {
    (2 * u + 2) as VarId
}

fn ghost(p: u32, k: usize, id: fn(usize) -> VarId) -> MultiPoly {
    let mut w = MultiPoly::zero(0);
    for u in 0..=k {
        let coef = BigInt::from(p).pow(u as u32);
        let term = MultiPoly::var(id(u), 0).pow((p as u64).pow((k - u) as u32));
        w = w.add(&term.scale(&FieldElem::Q(BigRational::from_integer(coef))));
    }
    w
}

/// The first `n` universal polynomials for `op`, over `Q`.
pub fn derive(p: u32, n: usize, op: WittOp) -> Vec<MultiPoly> {
    let mut out: Vec<MultiPoly> = Vec::with_capacity(n);
    for k in 0..n {
        let wx = ghost(p, k, x_id);
        let target = match op {
            WittOp::Add => wx.add(&ghost(p, k, y_id)),
            WittOp::Sub => wx.sub(&ghost(p, k, y_id)),
            WittOp::Mul => wx.mul(&ghost(p, k, y_id)),
            WittOp::Neg => wx.neg(),
        };
        let mut rest = target;
        for (u, prev) in out.iter().enumerate() {
            let coef = BigInt::from(p).pow(u as u32);
            let term = prev.pow((p as u64).pow((k - u) as u32));
            rest = rest.sub(&term.scale(&FieldElem::Q(BigRational::from_integer(coef))));
        }
        let inv = BigRational::new(BigInt::one(), BigInt::from(p).pow(k as u32));
        out.push(rest.scale(&FieldElem::Q(inv)));
    }
    out
}

fn compile(p: u32, poly: &MultiPoly) -> CompiledPoly {
    let mut out = Vec::new();
    for (m, c) in poly.terms() {
        let q = c.as_rational();
        assert!(q.denom().is_one(), "universal Witt polynomial with non-integral coefficient");
        let r = q.numer() % BigInt::from(p);
        let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
        let coef = r.to_u32().unwrap();
        if coef == 0 {
            continue;
        }
        let factors = m.0.iter().map(|&(v, e)| (v as usize - 1, e)).collect();
        out.push(CompiledTerm { coef, factors });
    }
    out
}

/// Memoized compiled polynomials for components `0..n`.
pub fn compiled(p: u32, n: usize, op: WittOp) -> Arc<Vec<CompiledPoly>> {
    if let Some(v) = table().read().unwrap().get(&(p, op)) {
        if v.len() >= n {
            return v.clone();
        }
    }
    let polys: Vec<CompiledPoly> = derive(p, n, op).iter().map(|q| compile(p, q)).collect();
    let arc = Arc::new(polys);
    let mut guard = table().write().unwrap();
    let entry = guard.entry((p, op)).or_insert_with(|| arc.clone());
    if entry.len() < n {
        *entry = arc.clone();
    }
    entry.clone()
}

/// Evaluates one compiled polynomial at `slots`, skipping terms that touch an exact zero.
pub fn eval<R: Ring>(poly: &CompiledPoly, slots: &[Option<&R>], zero: &R, cache: &mut HashMap<(usize, u32), R>) -> R {
    let mut acc = zero.clone();
    'terms: for term in poly {
        let mut prod: Option<R> = None;
        for &(s, e) in &term.factors {
            let Some(base) = slots[s] else { continue 'terms };
            let pw = cache.entry((s, e)).or_insert_with(|| base.pow(e as u64)).clone();
            prod = Some(match prod {
                None => pw,
                Some(q) => q.mul(&pw),
            });
        }
        let prod = prod.unwrap_or_else(|| zero.one_like());
        acc = acc.add(&if term.coef == 1 { prod } else { prod.mul_int(term.coef as i64) });
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_sum_polynomial_is_carry() {
        // S_1 = X_1 + Y_1 - Σ_{0<k<p} binom(p,k)/p X_0^k Y_0^{p-k}
        let s = compiled(3, 2, WittOp::Add);
        assert_eq!(s[0].len(), 2);
        let mut coefs: Vec<(u32, usize)> = s[1].iter().map(|t| (t.coef, t.factors.len())).collect();
        coefs.sort();
        assert_eq!(coefs, vec![(1, 1), (1, 1), (2, 2), (2, 2)]);
    }

    #[test]
    fn derived_polynomials_are_integral() {
        for p in [2u32, 3, 5] {
            for op in [WittOp::Add, WittOp::Sub, WittOp::Mul, WittOp::Neg] {
                for poly in derive(p, 3, op) {
                    assert!(poly.terms().all(|(_, c)| c.as_rational().denom().is_one()));
                }
            }
        }
    }

    #[test]
    fn negation_for_odd_p_is_componentwise() {
        let neg = compiled(5, 3, WittOp::Neg);
        for (k, poly) in neg.iter().enumerate() {
            assert_eq!(poly.len(), 1);
            assert_eq!(poly[0].coef, 4);
            assert_eq!(poly[0].factors.as_slice(), &[(2 * k, 1)]);
        }
    }
}
