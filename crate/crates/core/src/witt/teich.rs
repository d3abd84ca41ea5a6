use super::WittVec;
use crate::algebra::{LaurentElem, RatFunc};
use crate::arith::pow_p;
use crate::error::{Error, Result};

/// `V^r([a][t]^i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TeichMonomial {
    pub r: usize,
    pub a: RatFunc,
    pub i: i64,
}

impl TeichMonomial {
    pub fn to_witt(&self, p: u32, n: usize) -> WittVec<LaurentElem> {
        let mut comps = vec![LaurentElem::zero(p); n];
        comps[self.r] = LaurentElem::monomial(self.a.clone(), self.i);
        WittVec::new(p, comps)
    }
}

/// Writes `a` as `Σ V^r([a_k][t]^{i_k})` and returns the monomials with
/// `i < bound`; the rest is a `W_n` vector whose monomials all have
/// `i ≥ bound`.
///
/// Exact inputs are worked at a truncation that is doubled until every level
/// is determined. Truncated inputs must already carry enough precision.
pub fn to_teich_monomials(a: &WittVec<LaurentElem>, bound: i64) -> Result<Vec<TeichMonomial>> {
    assert!(bound >= 0, "the monomial bound must be non-negative");
    if !a.is_exact() {
        return peel(a, |_| bound);
    }
    if a.is_zero() {
        return Ok(Vec::new());
    }
    let p = a.p() as i64;
    let weight = p.pow(a.len() as u32 - 1);
    let mut prec = weight * a.pole_depth() + bound + 2;
    for _ in 0..4 {
        match peel(&a.truncate_series(prec), |_| bound) {
            Err(Error::InsufficientPrecision { .. }) => prec *= 2,
            other => return other,
        }
    }
    peel(a, |_| bound)
}

/// Same as [`to_teich_monomials`] with the components truncated at `t^prec`;
/// no retry on insufficient precision.
pub fn teich_monomials_at(a: &WittVec<LaurentElem>, bound: i64, prec: i64) -> Result<Vec<TeichMonomial>> {
    peel(&a.truncate_series(prec), |_| bound)
}

/// Truncation points for a weighted peel at working precision `prec`:
/// component `u` keeps `t^e` for `e < prec - ⌊p^u J / p^{n-1}⌋`, where `J` is
/// the weighted pole of the input.
pub fn weighted_precisions(p: u32, n: usize, weighted_pole: i64, prec: i64) -> Vec<i64> {
    let q = pow_p(p, n - 1);
    (0..n).map(|u| prec - pow_p(p, u) * weighted_pole / q).collect()
}

/// Monomials `V^r([α][t]^i)` of `a` with weight `-i·p^{n-1-r} ≥ lambda`.
///
/// The components of `a` should already be truncated (for instance at
/// [`weighted_precisions`]); missing precision is reported, never guessed.
pub fn teich_monomials_weighted(a: &WittVec<LaurentElem>, lambda: i64) -> Result<Vec<TeichMonomial>> {
    let n = a.len();
    let p = a.p();
    peel(a, |r| (-lambda).div_euclid(pow_p(p, n - 1 - r)) + 1)
}

fn peel(a: &WittVec<LaurentElem>, bound: impl Fn(usize) -> i64) -> Result<Vec<TeichMonomial>> {
    let p = a.p();
    let n = a.len();
    let mut out = Vec::new();
    let mut w = a.clone();
    for r in 0..n {
        let bound = bound(r);
        let c = w.comp(0).clone();
        if let Some(have) = c.prec() {
            if have < bound {
                return Err(Error::InsufficientPrecision { needed: bound, have });
            }
        }
        let head: Vec<(i64, RatFunc)> = c.terms().take_while(|(e, _)| **e < bound).map(|(e, u)| (*e, u.clone())).collect();
        out.extend(head.iter().map(|(e, u)| TeichMonomial { r, a: u.clone(), i: *e }));
        if r + 1 == n {
            break;
        }
        let len = w.len();
        let tail = c.sub(&c.head(bound));
        let mut sum = WittVec::teichmuller(p, len, tail);
        for (e, u) in head {
            sum = sum.add(&WittVec::teich_monomial(p, len, u, e));
        }
        let d = w.sub(&sum);
        debug_assert!(d.comp(0).is_known_zero(), "carry left a nonzero first component");
        w = WittVec::new(p, d.into_comps().split_off(1));
    }
    Ok(out)
}

/// `Σ V^r([a][t]^i)` as an exact Witt vector of length `n`.
pub fn recompose_monomials(p: u32, n: usize, monos: &[TeichMonomial]) -> WittVec<LaurentElem> {
    monos.iter().fold(WittVec::zero(p, n, &LaurentElem::zero(p)), |acc, m| acc.add(&m.to_witt(p, n)))
}
