use num_bigint::BigInt;
use num_rational::BigRational;

use super::WittVec;
use crate::algebra::{FieldElem, MultiPoly};
use crate::error::{Error, Result};

/// Ghost components `w_k = Σ_{u≤k} p^u A_u^{p^{k-u}}` of a Witt vector over
/// `Z[z]`, computed from the canonical integer lift of an `F_p[z]` vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GhostVec {
    p: u32,
    w: Vec<MultiPoly>,
}

fn p_pow(p: u32, u: usize) -> FieldElem {
    FieldElem::Q(BigRational::from_integer(BigInt::from(p).pow(u as u32)))
}

impl GhostVec {
    /// Lifts each coefficient to its residue in `[0, p)` and takes ghost components.
    pub fn lift(a: &WittVec<MultiPoly>) -> Self {
        let p = a.p();
        let lifted: Vec<MultiPoly> = a.comps().iter().map(|c| c.change_char(0).expect("F_p lifts to Z")).collect();
        let w = (0..lifted.len())
            .map(|k| {
                let mut acc = MultiPoly::zero(0);
                for (u, c) in lifted.iter().enumerate().take(k + 1) {
                    acc = acc.add(&c.pow((p as u64).pow((k - u) as u32)).scale(&p_pow(p, u)));
                }
                acc
            })
            .collect();
        GhostVec { p, w }
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.w
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, MultiPoly::add)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, MultiPoly::sub)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.zip(o, MultiPoly::mul)
    }

    pub fn neg(&self) -> Self {
        GhostVec { p: self.p, w: self.w.iter().map(MultiPoly::neg).collect() }
    }

    /// Ghost components of the Witt-theoretic Frobenius: `w_k ↦ w_{k+1}`.
    pub fn frobenius_shift(&self) -> Self {
        GhostVec { p: self.p, w: self.w[1..].to_vec() }
    }

    fn zip(&self, o: &Self, f: impl Fn(&MultiPoly, &MultiPoly) -> MultiPoly) -> Self {
        assert_eq!(self.w.len(), o.w.len());
        GhostVec { p: self.p, w: self.w.iter().zip(&o.w).map(|(a, b)| f(a, b)).collect() }
    }

    /// Inverts the ghost map over `Q` and reduces mod `p`; fails unless the
    /// recovered components have integral coefficients.
    pub fn unghost(&self) -> Result<WittVec<MultiPoly>> {
        let p = self.p;
        let mut comps: Vec<MultiPoly> = Vec::with_capacity(self.w.len());
        for k in 0..self.w.len() {
            let mut rest = self.w[k].clone();
            for (u, c) in comps.iter().enumerate() {
                rest = rest.sub(&c.pow((p as u64).pow((k - u) as u32)).scale(&p_pow(p, u)));
            }
            let inv = p_pow(p, k).inv().unwrap();
            comps.push(rest.scale(&inv));
        }
        let reduced = comps
            .iter()
            .map(|c| c.change_char(p).ok_or_else(|| Error::Invalid("ghost vector is not integral".into())))
            .collect::<Result<Vec<_>>>()?;
        if comps.iter().any(|c| c.terms().any(|(_, q)| !q.as_rational().is_integer())) {
            return Err(Error::Invalid("ghost vector is not integral".into()));
        }
        Ok(WittVec::new(p, reduced))
    }
}
