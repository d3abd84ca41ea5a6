use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::algebra::{var, LaurentElem, MultiPoly, RatFunc, VarId};
use crate::error::Result;
use crate::arith::pow_p;
use crate::witt::{teich_monomials_weighted, TeichMonomial, WittVec};

/// Coefficient field used to identify `L` with `K((t))`.
///
/// `Sigma0` keeps the `z_i`. `Sigma1 { e }` uses `y_i = z_i / (1 + z_i^{p^e} t)`
/// as coordinates, so that `z_i = y_i (1 + z_i^{p^e} t)` becomes a power
/// series in `t` over `F_p(y)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffField {
    Sigma0,
    Sigma1 { e: u32 },
}

/// `z_i` as a series in `t` over `F_p(y_i)`, to precision `prec`.
pub fn z_series(p: u32, e: u32, i: usize, prec: i64) -> LaurentElem {
    let y = LaurentElem::constant(RatFunc::var(var::y(i), p));
    let t = LaurentElem::t_pow(1, p);
    let mut z = y.add(&LaurentElem::big_o(p, 1));
    while z.prec().unwrap() < prec {
        let mut zp = z.clone();
        for _ in 0..e {
            zp = zp.frob();
        }
        z = y.add(&y.mul(&zp).mul(&t)).truncate(prec);
    }
    z.truncate(prec)
}

/// Evaluates polynomials at series substitutions for some of their variables.
struct Substituter {
    p: u32,
    prec: i64,
    series: BTreeMap<VarId, LaurentElem>,
    powers: HashMap<(VarId, u32), LaurentElem>,
}

impl Substituter {
    fn power(&mut self, v: VarId, e: u32) -> LaurentElem {
        if let Some(s) = self.powers.get(&(v, e)) {
            return s.clone();
        }
        let base = self.series[&v].clone();
        let out = if e % self.p == 0 {
            self.power(v, e / self.p).frob().truncate(self.prec)
        } else if e == 1 {
            base.clone()
        } else {
            self.power(v, e - 1).mul(&base).truncate(self.prec)
        };
        self.powers.insert((v, e), out.clone());
        out
    }

    fn poly(&mut self, f: &MultiPoly) -> LaurentElem {
        let mut acc = LaurentElem::zero(self.p);
        for (m, c) in f.terms() {
            let mut coef = crate::algebra::Monomial::one();
            let mut s = LaurentElem::one(self.p);
            for &(v, e) in &m.0 {
                if self.series.contains_key(&v) {
                    s = s.mul(&self.power(v, e)).truncate(self.prec);
                } else {
                    coef = coef.mul(&crate::algebra::Monomial::var(v, e));
                }
            }
            let c = RatFunc::from_poly(MultiPoly::term(coef, c.clone()));
            acc = acc.add(&s.scale(&c));
        }
        acc.truncate(self.prec)
    }
}

impl CoeffField {
    /// Series `σ(c) ∈ K_σ[[t]]` to precision `prec` (exact under `Sigma0`).
    pub fn transport_coeff(&self, c: &RatFunc, prec: i64) -> Result<LaurentElem> {
        match *self {
            CoeffField::Sigma0 => Ok(LaurentElem::constant(c.clone())),
            CoeffField::Sigma1 { e } => {
                let p = c.characteristic();
                let zs: BTreeSet<VarId> =
                    c.num().vars().union(&c.den().vars()).copied().filter(|v| var::is_z(*v)).collect();
                if zs.is_empty() {
                    return Ok(LaurentElem::constant(c.clone()));
                }
                if prec <= 0 {
                    return Ok(LaurentElem::big_o(p, prec));
                }
                let series = zs.iter().map(|&v| (v, z_series(p, e, v as usize, prec))).collect();
                let mut sub = Substituter { p, prec, series, powers: HashMap::new() };
                let num = sub.poly(c.num());
                if c.is_polynomial() {
                    return Ok(num);
                }
                let den = sub.poly(c.den());
                Ok(num.mul(&den.invert(prec)?).truncate(prec))
            }
        }
    }

    /// Re-expresses a series of `L` in the coordinates of this coefficient field.
    pub fn transport(&self, f: &LaurentElem, prec: i64) -> Result<LaurentElem> {
        if *self == CoeffField::Sigma0 {
            return Ok(f.clone());
        }
        let p = f.characteristic();
        let mut acc = LaurentElem::big_o(p, prec);
        for (i, c) in f.terms() {
            if *i >= prec {
                break;
            }
            acc = acc.add(&self.transport_coeff(c, prec - i)?.shift(*i));
        }
        if let Some(fp) = f.prec() {
            acc = acc.truncate(fp);
        }
        Ok(acc)
    }

    pub fn transport_witt(&self, a: &WittVec<LaurentElem>, prec: i64) -> Result<WittVec<LaurentElem>> {
        a.try_map(|c| self.transport(c, prec))
    }

    /// Re-expresses monomials `V^r([α][t]^i)` of `W_n(L)`, found with the
    /// `z`-coordinates, in this coefficient field, keeping only the resulting
    /// monomials of weight `-i·p^{n-1-r} ≥ lambda`.
    ///
    /// `σ(α)` is a power series `c` with `c(0) = α(y)`, and a monomial
    /// `V^s([β][t]^l)` of `[c] ∈ W_{n-r}` turns `[α][t]^i` into
    /// `V^s([β][t]^{l + i p^s})`, of weight lower by `l·p^{n-1-r-s}`; so `c`
    /// is only needed to low order.
    pub fn transport_monomials(&self, n: usize, monos: Vec<TeichMonomial>, lambda: i64) -> Result<Vec<TeichMonomial>> {
        if *self == CoeffField::Sigma0 {
            return Ok(monos);
        }
        let mut out = Vec::new();
        for m in monos {
            let p = m.a.characteristic();
            let len = n - m.r;
            let slack = pow_p(p, len - 1) * (-m.i) - lambda;
            if slack < 0 {
                continue;
            }
            let c = self.transport_coeff(&m.a, slack + 1)?;
            let lifted = WittVec::teichmuller(p, len, c);
            for t in teich_monomials_weighted(&lifted, -slack)? {
                out.push(TeichMonomial { r: m.r + t.r, a: t.a, i: m.i * pow_p(p, t.r) + t.i });
            }
        }
        Ok(out)
    }
}
