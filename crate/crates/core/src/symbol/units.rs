use crate::algebra::gcd::gcd;
use crate::algebra::{LaurentElem, MultiPoly, RatFunc};
use crate::error::{Error, Result};

/// `f = t^k · u0 · Π_{m=1}^{deg} (1 - c_m t^m)` up to `O(t^{k+deg+1})`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnitFactorization {
    pub k: i64,
    pub u0: RatFunc,
    pub factors: Vec<(i64, RatFunc)>,
}

/// Greedy factorization of the 1-unit part through degree `deg`.
pub fn factor_unit(f: &LaurentElem, deg: i64) -> Result<UnitFactorization> {
    let Some(k) = f.valuation() else { return Err(Error::ZeroInput) };
    let have = f.prec().map_or(i64::MAX, |q| q - k);
    if have <= deg {
        return Err(Error::InsufficientPrecision { needed: k + deg + 1, have: f.prec().unwrap() });
    }
    let u0 = f.coeff(k);
    u0.inv()?;
    let w: Vec<RatFunc> = (0..=deg).map(|e| f.coeff(k + e)).collect();
    // clear denominators, then t = w_0 s keeps every coefficient polynomial:
    // u_e t^e = w_e w_0^{e-1} s^e and c_m = c~_m / w_0^m
    let mut den = MultiPoly::one(f.characteristic());
    for c in &w {
        if !c.den().is_one() {
            let g = gcd(&den, c.den());
            den = den.mul(&c.den().div_exact(&g).expect("gcd divides"));
        }
    }
    let w: Vec<MultiPoly> = w.iter().map(|c| c.num().mul(&den.div_exact(c.den()).expect("common denominator"))).collect();
    let w0 = w[0].clone();
    let mut coeffs = Vec::with_capacity(w.len());
    let mut pw = MultiPoly::one(f.characteristic());
    for (e, we) in w.iter().enumerate() {
        coeffs.push(if e == 0 { MultiPoly::one(f.characteristic()) } else { we.mul(&pw) });
        if e > 0 {
            pw = pw.mul(&w0);
        }
    }
    let mut factors = Vec::new();
    let mut w0m = MultiPoly::one(f.characteristic());
    for m in 1..=deg {
        w0m = w0m.mul(&w0);
        let c = coeffs[m as usize].neg();
        if c.is_zero() {
            continue;
        }
        // divide by (1 - c s^m): v_e = u_e + c v_{e-m}
        for e in m..=deg {
            let prev = &coeffs[(e - m) as usize];
            if !prev.is_zero() {
                let add = c.mul(prev);
                coeffs[e as usize] = coeffs[e as usize].add(&add);
            }
        }
        factors.push((m, RatFunc::new(c, w0m.clone())?));
    }
    Ok(UnitFactorization { k, u0, factors })
}
