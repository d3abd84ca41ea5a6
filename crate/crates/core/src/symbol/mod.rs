//! Residues of degree-one de Rham–Witt forms over `K((t))` and the local
//! symbol `(a, f) = Res_t(a · dlog [f])`.

mod coeff;
mod reciprocity;
mod residue;
mod units;

pub use coeff::{z_series, CoeffField};
pub use reciprocity::{laurent_at, order_at, reciprocity_check, Place, ReciprocityReport};
pub use residue::{residue_term, OneFormTerm};
pub use units::{factor_unit, UnitFactorization};

use crate::algebra::{LaurentElem, RatFunc};
use crate::arith::{inv_mod, pow_p};
use crate::error::{Error, Result};
use crate::witt::{teich_monomials_weighted, weighted_precisions, WittVec};

/// `coef · form`, with `coef` an integer acting on `W_n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DlogTerm {
    pub coef: i64,
    pub form: OneFormTerm,
}

/// Expansion of `dlog [f]` for `f = t^k u0 Π (1 - c_m t^m)`, using
/// `-dlog[1-x] = Σ_{i≥0} [x]^i d[x] + Σ_{s=1}^{n-1} Σ_{p∤j} (1/j) dV^s([x]^j)`
/// with `x = c_m t^m`; terms whose `t`-exponent in the `d`-part exceeds `deg`
/// are dropped, as are the `u0` terms (no `dt` component).
pub fn dlog_teich(p: u32, n: usize, f: &LaurentElem, deg: i64) -> Result<Vec<DlogTerm>> {
    let u = factor_unit(f, deg)?;
    let q = pow_p(p, n);
    let mut out = Vec::new();
    if u.k != 0 {
        out.push(DlogTerm { coef: u.k, form: OneFormTerm::dlog_t(p) });
    }
    for (m, c) in &u.factors {
        let mut k = 0;
        while m * (k + 1) <= deg {
            let form = OneFormTerm { r: 0, a: c.pow(k as u64), i: m * k, s: 0, b: c.clone(), j: *m };
            out.push(DlogTerm { coef: -1, form });
            k += 1;
        }
        for s in 1..n {
            let mut j = 1;
            while m * j <= deg {
                if j % p as i64 != 0 {
                    let form = OneFormTerm { r: 0, a: RatFunc::one(p), i: 0, s, b: c.pow(j as u64), j: m * j };
                    out.push(DlogTerm { coef: -inv_mod(j, q), form });
                }
                j += 1;
            }
        }
    }
    Ok(out)
}

fn witt_zero(p: u32, n: usize) -> WittVec<RatFunc> {
    WittVec::zero(p, n, &RatFunc::zero(p))
}

/// Least weight `-i·p^{n-1-r}` of a monomial `V^r([α][t]^i)` that can pair
/// nontrivially with `dlog [f]`; `None` when `f` is a unit with trivial
/// 1-unit part, so that every symbol vanishes.
fn pairing_threshold(fac: &UnitFactorization) -> Option<i64> {
    if fac.k != 0 {
        return Some(0);
    }
    fac.factors.iter().map(|(m, _)| *m).min()
}

/// Default working precision for `(a, f)`.
pub fn working_precision(a: &WittVec<LaurentElem>, f: &LaurentElem) -> i64 {
    let j = a.weighted_pole();
    let lambda = match f.valuation() {
        Some(v) if f.prec().map_or(true, |q| q > v + j) => {
            factor_unit(f, j).ok().and_then(|fac| pairing_threshold(&fac)).unwrap_or(0)
        }
        _ => 0,
    };
    (j - lambda).max(0) + 3
}

/// The local symbol evaluated at working precision `prec`, with no gate.
///
/// Only the monomials `V^R([α][t]^I)` of `a` whose weight reaches the
/// conductor of the unit part of `f` can pair nontrivially; for each of them
/// the matching terms of `dlog [f]` are found directly instead of expanding
/// the logarithm. Component `u` of `a` is read to
/// `prec - ⌊p^u J / p^{n-1}⌋`, `J` the weighted pole of `a`.
pub fn local_symbol_at(a: &WittVec<LaurentElem>, f: &LaurentElem, sigma: CoeffField, prec: i64) -> Result<WittVec<RatFunc>> {
    let p = a.p();
    let n = a.len();
    let q = pow_p(p, n);
    let mut acc = witt_zero(p, n);
    let big_j = a.weighted_pole();
    let v = f.valuation().ok_or(Error::ZeroInput)?;
    let f_s = sigma.transport(f, v + big_j + 1)?;
    let fac = factor_unit(&f_s, big_j)?;
    let Some(lambda) = pairing_threshold(&fac) else { return Ok(acc) };
    if lambda > big_j {
        return Ok(acc);
    }
    let precs = weighted_precisions(p, n, big_j, prec);
    let a_t = WittVec::new(p, a.comps().iter().zip(&precs).map(|(c, &pr)| c.truncate(pr)).collect());
    let monos = sigma.transport_monomials(n, teich_monomials_weighted(&a_t, lambda)?, lambda)?;
    for m in &monos {
        let (r, alpha, i) = (m.r, &m.a, m.i);
        if i == 0 {
            if fac.k != 0 {
                let t = OneFormTerm::dlog_t(p).times_monomial(p, r, alpha, 0);
                acc = acc.add(&residue_term(p, n, &t).mul_int(fac.k));
            }
            continue;
        }
        for (mm, c) in &fac.factors {
            let step = mm * pow_p(p, r);
            if (-i) % step == 0 {
                // [x]^k d[x], x = c t^mm
                let k = -i / step - 1;
                let base = OneFormTerm { r: 0, a: c.pow(k as u64), i: mm * k, s: 0, b: c.clone(), j: *mm };
                acc = acc.sub(&residue_term(p, n, &base.times_monomial(p, r, alpha, i)));
            }
            for s in 1..n {
                // (1/j) dV^s([x]^j)
                let num = -i * pow_p(p, s);
                if num % pow_p(p, r) != 0 {
                    continue;
                }
                let mj = num / pow_p(p, r);
                if mj % mm != 0 {
                    continue;
                }
                let j = mj / mm;
                if j % p as i64 == 0 {
                    continue;
                }
                let t = OneFormTerm { r, a: alpha.clone(), i, s, b: c.pow(j as u64), j: mj };
                acc = acc.add(&residue_term(p, n, &t).mul_int(-inv_mod(j, q)));
            }
        }
    }
    Ok(acc)
}

/// `(a, f)_{L,σ}` with the precision gate: the value is computed at the
/// working precision and at twice that, and must agree.
pub fn local_symbol(a: &WittVec<LaurentElem>, f: &LaurentElem, sigma: CoeffField) -> Result<WittVec<RatFunc>> {
    gated(working_precision(a, f), |prec| local_symbol_at(a, f, sigma, prec))
}

/// Runs `eval` at `prec` (doubling on insufficient precision) and again at
/// twice the successful precision; the two results must agree.
pub fn gated<T: PartialEq>(prec: i64, eval: impl Fn(i64) -> Result<T>) -> Result<T> {
    let mut prec = prec.max(1);
    for _ in 0..6 {
        match eval(prec) {
            Err(Error::InsufficientPrecision { .. }) => prec *= 2,
            Err(e) => return Err(e),
            Ok(v) => {
                let w = eval(2 * prec)?;
                return if v == w { Ok(v) } else { Err(Error::PrecisionGate) };
            }
        }
    }
    eval(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::var;

    fn one_minus(c: RatFunc, m: i64) -> LaurentElem {
        let p = c.characteristic();
        LaurentElem::from_terms(p, [(0, RatFunc::one(p)), (m, c.neg())], None)
    }

    #[test]
    fn dlog_of_t_is_single_term() {
        let d = dlog_teich(3, 2, &LaurentElem::t_pow(1, 3), 5).unwrap();
        assert_eq!(d, vec![DlogTerm { coef: 1, form: OneFormTerm::dlog_t(3) }]);
    }

    #[test]
    fn dlog_includes_shifted_term() {
        let p = 2;
        let c = RatFunc::var(var::z(1), p);
        let d = dlog_teich(p, 2, &one_minus(c.clone(), 1), 3).unwrap();
        let expected = OneFormTerm { r: 0, a: RatFunc::one(p), i: 0, s: 1, b: c, j: 1 };
        assert!(d.iter().any(|t| t.form == expected && t.coef.rem_euclid(4) == 3));
    }

    #[test]
    fn explicit_symbol_values() {
        for p in [2u32, 3, 5] {
            let c = RatFunc::var(var::z(1), p);
            for r0 in [1i64, 2, 3] {
                if r0 % p as i64 == 0 {
                    continue;
                }
                for e in 0..2usize {
                    let r = r0 * pow_p(p, e);
                    let a = WittVec::teich_monomial(p, e + 1, RatFunc::one(p), -r0);
                    let v = local_symbol(&a, &one_minus(c.clone(), r), CoeffField::Sigma0).unwrap();
                    let mut comps = vec![RatFunc::zero(p); e + 1];
                    comps[e] = c.clone();
                    assert_eq!(v, WittVec::new(p, comps).mul_int(-r0), "p={p} r0={r0} e={e}");
                }
            }
        }
    }

    #[test]
    fn integral_against_unit_vanishes() {
        let p = 3;
        let a = WittVec::new(p, vec![LaurentElem::t_pow(2, p), LaurentElem::constant(RatFunc::var(var::z(1), p))]);
        let f = one_minus(RatFunc::var(var::X, p), 2);
        assert!(local_symbol(&a, &f, CoeffField::Sigma0).unwrap().is_zero());
    }

    #[test]
    fn integral_against_t_is_value_at_zero() {
        let p = 3;
        let z = RatFunc::var(var::z(1), p);
        let c0 = LaurentElem::from_terms(p, [(0, z.clone()), (1, RatFunc::one(p))], None);
        let a = WittVec::new(p, vec![c0, LaurentElem::zero(p)]);
        let v = local_symbol(&a, &LaurentElem::t_pow(1, p), CoeffField::Sigma0).unwrap();
        assert_eq!(v, WittVec::teichmuller(p, 2, z));
    }
}
