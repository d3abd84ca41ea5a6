use std::collections::BTreeMap;

use super::teich::to_teich_monomials;
use super::WittVec;
use crate::algebra::{LaurentElem, RatFunc};
use crate::error::Result;

/// Unique decomposition
/// `a = Σ_{i<0} a_i [t]^i + Σ_{s≥1, j<0, p∤j} V^s(b_{s,j} [t]^j) + (integral)`
/// with `a_i ∈ W_n(K)` and `b_{s,j} ∈ W_{n-s}(K)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonForm {
    pub p: u32,
    pub n: usize,
    pub terms_s0: BTreeMap<i64, WittVec<RatFunc>>,
    pub terms_v: BTreeMap<(usize, i64), WittVec<RatFunc>>,
    pub integral_remainder: WittVec<LaurentElem>,
}

fn ord_p(mut i: i64, p: i64) -> u32 {
    let mut u = 0;
    while i % p == 0 {
        i /= p;
        u += 1;
    }
    u
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, WittVec<RatFunc>>, key: K, v: WittVec<RatFunc>) {
    let next = match map.remove(&key) {
        Some(old) => old.add(&v),
        None => v,
    };
    if !next.is_zero() {
        map.insert(key, next);
    }
}

/// `V^u([α])` in `W_len(K)`.
fn v_teich(p: u32, len: usize, u: usize, alpha: &RatFunc) -> WittVec<RatFunc> {
    let mut comps = vec![RatFunc::zero(p); len];
    comps[u] = alpha.clone();
    WittVec::new(p, comps)
}

pub fn canonical_form(a: &WittVec<LaurentElem>) -> Result<CanonForm> {
    let p = a.p();
    let n = a.len();
    let mut terms_s0 = BTreeMap::new();
    let mut terms_v = BTreeMap::new();
    for m in to_teich_monomials(a, 0)? {
        let u = ord_p(m.i, p as i64) as usize;
        if u >= m.r {
            // V^r([α][t]^i) = V^r([α]) [t]^{i/p^r}
            let key = m.i / (p as i64).pow(m.r as u32);
            accumulate(&mut terms_s0, key, v_teich(p, n, m.r, &m.a));
        } else {
            // V^r([α][t]^{p^u j}) = V^{r-u}(V^u([α]) [t]^j)
            let s = m.r - u;
            let j = m.i / (p as i64).pow(u as u32);
            accumulate(&mut terms_v, (s, j), v_teich(p, n - s, u, &m.a));
        }
    }
    let mut form = CanonForm { p, n, terms_s0, terms_v, integral_remainder: WittVec::zero(p, n, &LaurentElem::zero(p)) };
    let polar = form.polar_part();
    form.integral_remainder = a.sub(&polar);
    debug_assert!(form.integral_remainder.is_integral());
    Ok(form)
}

impl CanonForm {
    /// The recomposed sum without the integral remainder.
    pub fn polar_part(&self) -> WittVec<LaurentElem> {
        let p = self.p;
        let mut acc = WittVec::zero(p, self.n, &LaurentElem::zero(p));
        for (i, ai) in &self.terms_s0 {
            let term = WittVec::from_constants(ai).scale_teich(&LaurentElem::t_pow(*i, p));
            acc = acc.add(&term);
        }
        for ((s, j), b) in &self.terms_v {
            let term = WittVec::from_constants(b).scale_teich(&LaurentElem::t_pow(*j, p)).verschiebung(*s);
            acc = acc.add(&term);
        }
        acc
    }

    pub fn is_integral(&self) -> bool {
        self.terms_s0.is_empty() && self.terms_v.is_empty()
    }
}

pub fn recompose(c: &CanonForm) -> WittVec<LaurentElem> {
    c.polar_part().add(&c.integral_remainder)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::var;

    fn z(p: u32) -> RatFunc {
        RatFunc::var(var::z(1), p)
    }

    #[test]
    fn teichmuller_pole_is_canonical() {
        let a = WittVec::teich_monomial(2, 2, RatFunc::one(2), -1);
        let c = canonical_form(&a).unwrap();
        assert_eq!(c.terms_s0.len(), 1);
        assert_eq!(c.terms_s0[&-1], WittVec::one(2, 2, &RatFunc::one(2)));
        assert!(c.terms_v.is_empty());
        assert!(c.integral_remainder.is_zero());
    }

    #[test]
    fn shifted_p_power_pole_becomes_s0_term() {
        for p in [2u32, 3] {
            let a = WittVec::teich_monomial(p, 1, z(p), -(p as i64)).verschiebung(1);
            let c = canonical_form(&a).unwrap();
            assert!(c.terms_v.is_empty());
            let expected = WittVec::new(p, vec![RatFunc::zero(p), z(p)]);
            assert_eq!(c.terms_s0.get(&-1), Some(&expected));
            assert_eq!(recompose(&c), a);
        }
    }

    #[test]
    fn integral_input_has_no_terms() {
        let a = WittVec::new(3, vec![LaurentElem::t_pow(2, 3), LaurentElem::constant(z(3))]);
        let c = canonical_form(&a).unwrap();
        assert!(c.is_integral());
        assert_eq!(c.integral_remainder, a);
    }
}
