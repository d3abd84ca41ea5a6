//! Minimal commutative-ring interface used by the Witt-vector layer.

use std::fmt::Debug;

use super::field::Char;
use super::laurent::LaurentElem;
use super::poly::MultiPoly;
use super::ratfunc::RatFunc;

pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Exact zero; callers may skip work on such operands.
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn mul_int(&self, k: i64) -> Self;
    fn characteristic(&self) -> Char;

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The `p`-th power map in characteristic `p`.
    fn frob(&self) -> Self {
        self.pow(self.characteristic() as u64)
    }
}

macro_rules! forward_ring {
    ($t:ty) => {
        impl Ring for $t {
            fn zero_like(&self) -> Self {
                <$t>::zero(self.characteristic())
            }
            fn one_like(&self) -> Self {
                <$t>::one(self.characteristic())
            }
            fn is_zero(&self) -> bool {
                <$t>::is_zero(self)
            }
            fn add(&self, o: &Self) -> Self {
                <$t>::add(self, o)
            }
            fn sub(&self, o: &Self) -> Self {
                <$t>::sub(self, o)
            }
            fn neg(&self) -> Self {
                <$t>::neg(self)
            }
            fn mul(&self, o: &Self) -> Self {
                <$t>::mul(self, o)
            }
            fn mul_int(&self, k: i64) -> Self {
                <$t>::mul_int(self, k)
            }
            fn characteristic(&self) -> Char {
                <$t>::characteristic(self)
            }
            fn pow(&self, e: u64) -> Self {
                <$t>::pow(self, e)
            }
            fn frob(&self) -> Self {
                if self.characteristic() == 0 {
                    panic!("frobenius needs positive characteristic")
                }
                <$t>::frob(self)
            }
        }
    };
}

forward_ring!(MultiPoly);
forward_ring!(RatFunc);
forward_ring!(LaurentElem);
