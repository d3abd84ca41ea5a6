//! Reduced rational functions with monic denominators.

use std::fmt;

use super::field::{Char, FieldElem};
use super::gcd::gcd;
use super::poly::{MultiPoly, VarId};
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic under grlex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn zero(ch: Char) -> Self {
        RatFunc { num: MultiPoly::zero(ch), den: MultiPoly::one(ch) }
    }

    pub fn one(ch: Char) -> Self {
        RatFunc { num: MultiPoly::one(ch), den: MultiPoly::one(ch) }
    }

    pub fn from_i64(k: i64, ch: Char) -> Self {
        Self::from_poly(MultiPoly::from_i64(k, ch))
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn var(v: VarId, ch: Char) -> Self {
        Self::from_poly(MultiPoly::var(v, ch))
    }

    pub fn from_poly(num: MultiPoly) -> Self {
        let ch = num.characteristic();
        RatFunc { num, den: MultiPoly::one(ch) }
    }

    /// Builds and normalizes `num / den`.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        let ch = num.characteristic();
        if num.is_zero() {
            return RatFunc::zero(ch);
        }
        if let Some(c) = den.constant_value() {
            let inv = c.inv().expect("nonzero denominator");
            return RatFunc { num: num.scale(&inv), den: MultiPoly::one(ch) };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.leading_coeff().inv().unwrap();
        RatFunc { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn characteristic(&self) -> Char {
        self.num.characteristic()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<FieldElem> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(self.num.add(&o.num));
        }
        if self.den == o.den {
            return Self::normalized(self.num.add(&o.num), self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = o.den.div_exact(&g).unwrap();
        let num = self.num.mul(&b).add(&o.num.mul(&a));
        Self::normalized(num, a.mul(&o.den))
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.characteristic());
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(self.num.mul(&o.num));
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.leading_coeff().inv().unwrap();
        RatFunc { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        if c.is_zero() {
            return RatFunc::zero(self.characteristic());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        self.scale(&FieldElem::from_i64(k, self.characteristic()))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u64) -> Self {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn pow_i(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// `p`-th power in characteristic `p`.
    pub fn frob(&self) -> Self {
        RatFunc { num: self.num.frob(), den: self.den.frob() }
    }

    /// `d` with `d^p = self`, or `None` when `self` is not a `p`-th power.
    pub fn pth_root(&self) -> Option<Self> {
        let n = self.num.pth_root()?;
        let d = self.den.pth_root()?;
        Some(RatFunc { num: n, den: d })
    }

    pub fn derivative(&self, v: VarId) -> Self {
        let dn = self.num.derivative(v);
        if self.den.is_one() {
            return RatFunc::from_poly(dn);
        }
        let dd = self.den.derivative(v);
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Self::normalized(num, self.den.mul(&self.den))
    }

    /// Substitutes `v := s`.
    pub fn substitute(&self, v: VarId, s: &RatFunc) -> Result<Self> {
        let n = subst_poly(&self.num, v, s);
        let d = subst_poly(&self.den, v, s);
        n.div(&d)
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn change_char(&self, ch: Char) -> Option<RatFunc> {
        let n = self.num.change_char(ch)?;
        let d = self.den.change_char(ch)?;
        RatFunc::new(n, d).ok()
    }

    pub fn rename(&self, f: impl Fn(VarId) -> VarId + Copy) -> RatFunc {
        Self::normalized(self.num.rename(f), self.den.rename(f))
    }
}

fn subst_poly(p: &MultiPoly, v: VarId, s: &RatFunc) -> RatFunc {
    if !p.contains_var(v) {
        return RatFunc::from_poly(p.clone());
    }
    let coeffs = p.to_univariate(v);
    let mut acc = RatFunc::zero(p.characteristic());
    for c in coeffs.iter().rev() {
        acc = acc.mul(s).add(&RatFunc::from_poly(c.clone()));
    }
    acc
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let wrap = |p: &MultiPoly| if p.num_terms() > 1 { format!("({p})") } else { p.to_string() };
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}
