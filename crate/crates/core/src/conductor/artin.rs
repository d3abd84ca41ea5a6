use serde::Serialize;

use crate::algebra::{LaurentElem, Monomial, MultiPoly, RatFunc};
use crate::error::Result;
use crate::filtration::matsuda_level;
use crate::witt::WittVec;

use super::{descent_fields, symbol_tests, z_count, ConductorKind, ConductorReport, Verdict};

/// A character `δ_n(rep) ∈ H^1(L, Z/p^n)`, given by any representative.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AswClass {
    pub rep: WittVec<LaurentElem>,
}

impl AswClass {
    pub fn new(rep: WittVec<LaurentElem>) -> Self {
        AswClass { rep }
    }

    pub fn p(&self) -> u32 {
        self.rep.p()
    }

    pub fn n(&self) -> usize {
        self.rep.len()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Triviality {
    Trivial,
    Nontrivial,
    Undecided,
}

/// Moves `rep` within its class modulo `(F - 1)W_n(L)` towards smaller
/// poles. Component by component, the polar terms `β^p t^{pi}` of
/// component `k` are the `k`-th component of `F(V^k([h]))`,
/// `h = Σ β t^i`; subtracting `(F - 1)V^k([h])` trades them for `h`.
pub fn asw_reduce(rep: &WittVec<LaurentElem>) -> Result<WittVec<LaurentElem>> {
    let p = rep.p();
    let n = rep.len();
    let pp = p as i64;
    let mut cur = rep.clone();
    for k in 0..n {
        loop {
            let roots: Vec<(i64, RatFunc)> = cur
                .comp(k)
                .terms()
                .filter(|(e, _)| **e < 0 && **e % pp == 0)
                .filter_map(|(e, c)| c.pth_root().map(|b| (e / pp, b)))
                .collect();
            if roots.is_empty() {
                break;
            }
            let h = LaurentElem::from_terms(p, roots, None);
            let y = WittVec::teichmuller(p, n - k, h).verschiebung(k);
            cur = cur.try_sub(&y.frob())?.try_add(&y)?;
        }
    }
    Ok(cur)
}

/// `(f, rest)` with `h = f^p - f + rest` and `rest` free of monomials that are
/// `p`-th powers, the constant term included. `h ∈ ℘(K(x))` exactly when
/// `rest = 0`.
fn artin_schreier_split(h: &MultiPoly) -> (MultiPoly, MultiPoly) {
    let ch = h.characteristic();
    let mut rest = h.clone();
    let mut f = MultiPoly::zero(ch);
    loop {
        let found = rest
            .terms()
            .rev()
            .find(|(m, _)| !m.is_one() && m.0.iter().all(|&(_, e)| e % ch == 0))
            .map(|(m, c)| (m.clone(), c.clone()));
        let Some((m, c)) = found else { return (f, rest) };
        let root = Monomial(m.0.iter().map(|&(v, e)| (v, e / ch)).collect());
        // c m = (c μ)^p - c μ + c μ, with c ∈ F_p
        rest.add_term(m, c.neg());
        rest.add_term(root.clone(), c.clone());
        f.add_term(root, c);
    }
}

/// Decides whether `w ∈ (F - 1) W_n(K(x))` for `w` with polynomial
/// components. The first component must be Artin–Schreier trivial; after
/// subtracting `(F - 1)[g]` for a solution `g` the question moves to the
/// remaining `n - 1` components.
pub fn is_asw_trivial(w: &WittVec<RatFunc>) -> Triviality {
    let p = w.p();
    let mut cur = w.clone();
    loop {
        if cur.is_zero() {
            return Triviality::Trivial;
        }
        if !cur.comps().iter().all(|c| c.is_polynomial()) {
            return Triviality::Undecided;
        }
        let (g, rest) = artin_schreier_split(cur.comp(0).num());
        if !rest.is_zero() {
            return Triviality::Nontrivial;
        }
        let lift = WittVec::teichmuller(p, cur.len(), RatFunc::from_poly(g));
        let d = cur.sub(&lift.frob().sub(&lift));
        debug_assert!(d.comp(0).is_zero());
        if d.len() == 1 {
            return Triviality::Trivial;
        }
        cur = WittVec::new(p, d.into_comps().split_off(1));
    }
}

fn triviality_verdict(v: &WittVec<RatFunc>) -> Verdict {
    match is_asw_trivial(v) {
        Triviality::Trivial => Verdict::Trivial,
        Triviality::Nontrivial => Verdict::Nontrivial,
        Triviality::Undecided => Verdict::Undecided,
    }
}

/// `Art(χ) = min { j ≥ 0 : χ ∈ δ(fil_j W_n(L)) }`.
///
/// The representative is first reduced by [`asw_reduce`]; the descent then
/// lowers the level while every required symbol lies in `(F - 1)W_n(K(x))`.
/// Reaching level 1 means the class is unramified. An undecided test stops
/// the descent and reports the interval `[0, r]`.
pub fn artin_conductor(chi: &AswClass) -> Result<ConductorReport> {
    let rep = asw_reduce(&chi.rep)?;
    let start = matsuda_level(&rep).value;
    let mut report = ConductorReport::bare(0, ConductorKind::Artin);
    let p = rep.p();
    let m = z_count(&rep);
    let mut r = start;
    while r >= 2 {
        let step = symbol_tests(&rep, r, &descent_fields(p, r, m), triviality_verdict)?;
        let undecided = step.tests.iter().any(|t| t.verdict == Verdict::Undecided);
        let done = !step.vanishes();
        report.descent_trace.push(step);
        if undecided {
            report.interval = Some((0, r));
        }
        if done {
            break;
        }
        r -= 1;
    }
    // fil_1 and fil_0 agree on the p-part
    report.value = if r < 2 { 0 } else { r };
    report.reduced_rep = Some(rep);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::var;

    fn z(p: u32) -> RatFunc {
        RatFunc::var(var::z(1), p)
    }

    fn x(p: u32) -> RatFunc {
        RatFunc::var(var::X, p)
    }

    #[test]
    fn reduce_takes_pth_roots() {
        let p = 3;
        let a = WittVec::teich_monomial(p, 1, z(p).pow(3), -3);
        assert_eq!(asw_reduce(&a).unwrap(), WittVec::teich_monomial(p, 1, z(p), -1));
        let b = WittVec::teich_monomial(p, 1, z(p), -3);
        assert_eq!(asw_reduce(&b).unwrap(), b);
        let c = WittVec::teich_monomial(p, 2, RatFunc::one(p), -2);
        assert_eq!(asw_reduce(&c).unwrap(), c);
    }

    #[test]
    fn v_top_of_linear_term_is_nontrivial() {
        for p in [2u32, 3] {
            for n in 1..=3usize {
                let mut comps = vec![RatFunc::zero(p); n];
                comps[n - 1] = z(p).mul(&x(p));
                assert_eq!(is_asw_trivial(&WittVec::new(p, comps)), Triviality::Nontrivial);
            }
        }
    }

    #[test]
    fn images_of_f_minus_one_are_trivial() {
        let p = 3;
        let g = WittVec::new(p, vec![z(p).mul(&x(p)).add(&RatFunc::one(p)), x(p).pow(2), z(p)]);
        let w = g.frob().sub(&g);
        assert_eq!(is_asw_trivial(&w), Triviality::Trivial);
        assert_eq!(is_asw_trivial(&WittVec::zero(p, 2, &RatFunc::zero(p))), Triviality::Trivial);
        let c = WittVec::teichmuller(p, 1, RatFunc::one(p));
        assert_eq!(is_asw_trivial(&c), Triviality::Nontrivial);
    }

    #[test]
    fn descent_values() {
        for p in [2u32, 3] {
            for m in 1..5i64 {
                if m % p as i64 == 0 {
                    continue;
                }
                let chi = AswClass::new(WittVec::teich_monomial(p, 1, z(p).add(&RatFunc::one(p)), -m));
                assert_eq!(artin_conductor(&chi).unwrap().value, m as u64 + 1);
            }
        }
        // [c^p t^{-p}] is equivalent to [c t^{-1}]
        let p = 3;
        let chi = AswClass::new(WittVec::teich_monomial(p, 1, z(p).pow(3), -3));
        assert_eq!(artin_conductor(&chi).unwrap().value, 2);
    }

    #[test]
    fn r_equals_p_equals_two() {
        // t^{-2} + t^{-1} = (F - 1)(t^{-1})
        let p = 2;
        let a = WittVec::new(p, vec![LaurentElem::from_terms(p, [(-2, RatFunc::one(p)), (-1, RatFunc::one(p))], None)]);
        assert_eq!(artin_conductor(&AswClass::new(a)).unwrap().value, 0);
        // z t^{-2} + t^{-1}: c = z is not b^2 = 1
        let a = WittVec::new(p, vec![LaurentElem::from_terms(p, [(-2, z(p)), (-1, RatFunc::one(p))], None)]);
        let rep = artin_conductor(&AswClass::new(a)).unwrap();
        assert_eq!(rep.value, 2);
        assert_eq!(rep.descent_trace[0].tests[0].verdict, Verdict::Nontrivial);
    }
}
