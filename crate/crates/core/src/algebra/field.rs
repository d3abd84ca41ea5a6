//! Prime-field and rational constants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Characteristic of a coefficient domain: a prime `p`, or `0` for the rationals.
pub type Char = u32;

/// An element of `F_p` (canonical residue) or of `Q` (reduced fraction).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldElem {
    Fp { v: u32, p: u32 },
    Q(BigRational),
}

impl FieldElem {
    pub fn zero(ch: Char) -> Self {
        if ch == 0 {
            FieldElem::Q(BigRational::zero())
        } else {
            FieldElem::Fp { v: 0, p: ch }
        }
    }

    pub fn one(ch: Char) -> Self {
        Self::from_i64(1, ch)
    }

    pub fn from_i64(k: i64, ch: Char) -> Self {
        if ch == 0 {
            FieldElem::Q(BigRational::from_integer(BigInt::from(k)))
        } else {
            let v = k.rem_euclid(ch as i64) as u32;
            FieldElem::Fp { v, p: ch }
        }
    }

    /// Reduces an integer of arbitrary size into the field.
    pub fn from_bigint(k: &BigInt, ch: Char) -> Self {
        if ch == 0 {
            FieldElem::Q(BigRational::from_integer(k.clone()))
        } else {
            let r = k.mod_floor(&BigInt::from(ch));
            FieldElem::Fp { v: r.to_u32().unwrap(), p: ch }
        }
    }

    /// Maps a rational into the field; in characteristic `p` the denominator must be a unit.
    pub fn from_rational(q: &BigRational, ch: Char) -> Option<Self> {
        if ch == 0 {
            return Some(FieldElem::Q(q.clone()));
        }
        let num = Self::from_bigint(q.numer(), ch);
        let den = Self::from_bigint(q.denom(), ch);
        den.inv().map(|d| num.mul(&d))
    }

    pub fn characteristic(&self) -> Char {
        match self {
            FieldElem::Fp { p, .. } => *p,
            FieldElem::Q(_) => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Fp { v, .. } => *v == 0,
            FieldElem::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Fp { v, .. } => *v == 1,
            FieldElem::Q(q) => q.is_one(),
        }
    }

    /// Integer value when the element is a rational integer (always true in `F_p`).
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            FieldElem::Fp { v, .. } => Some(BigInt::from(*v)),
            FieldElem::Q(q) => q.is_integer().then(|| q.to_integer()),
        }
    }

    pub fn as_rational(&self) -> BigRational {
        match self {
            FieldElem::Fp { v, .. } => BigRational::from_integer(BigInt::from(*v)),
            FieldElem::Q(q) => q.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (FieldElem::Fp { v, p }, FieldElem::Fp { v: w, p: q }) => {
                debug_assert_eq!(p, q);
                FieldElem::Fp { v: ((*v as u64 + *w as u64) % *p as u64) as u32, p: *p }
            }
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a + b),
            _ => panic!("characteristic mismatch"),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldElem::Fp { v, p } => FieldElem::Fp { v: if *v == 0 { 0 } else { p - v }, p: *p },
            FieldElem::Q(a) => FieldElem::Q(-a),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (FieldElem::Fp { v, p }, FieldElem::Fp { v: w, p: q }) => {
                debug_assert_eq!(p, q);
                FieldElem::Fp { v: ((*v as u64 * *w as u64) % *p as u64) as u32, p: *p }
            }
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a * b),
            _ => panic!("characteristic mismatch"),
        }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        self.mul(&Self::from_i64(k, self.characteristic()))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        match self {
            FieldElem::Fp { v, p } => {
                // Fermat: v^(p-2)
                let mut base = *v as u64;
                let mut e = *p as u64 - 2;
                let m = *p as u64;
                let mut acc = 1u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                Some(FieldElem::Fp { v: acc as u32, p: *p })
            }
            FieldElem::Q(a) => Some(FieldElem::Q(a.recip())),
        }
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.characteristic());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// True when the rational is negative (always false in `F_p`).
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElem::Fp { .. } => false,
            FieldElem::Q(q) => q.is_negative(),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Fp { v, .. } => write!(f, "{v}"),
            FieldElem::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_roundtrip() {
        for p in [2u32, 3, 5, 7] {
            for v in 1..p as i64 {
                let a = FieldElem::from_i64(v, p);
                assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn negative_residues_are_canonical() {
        assert_eq!(FieldElem::from_i64(-1, 5), FieldElem::Fp { v: 4, p: 5 });
    }

    #[test]
    fn rational_into_fp() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let h = FieldElem::from_rational(&half, 5).unwrap();
        assert_eq!(h, FieldElem::from_i64(3, 5));
        assert!(FieldElem::from_rational(&half, 2).is_none());
    }
}
