use crate::algebra::RatFunc;
use crate::arith::{gcd, pow_p};
use crate::witt::WittVec;

/// `V^r([a][t]^i) · dV^s([b][t]^j)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OneFormTerm {
    pub r: usize,
    pub a: RatFunc,
    pub i: i64,
    pub s: usize,
    pub b: RatFunc,
    pub j: i64,
}

impl OneFormTerm {
    /// `[t]^{-1} d[t] = dlog [t]`.
    pub fn dlog_t(p: u32) -> Self {
        OneFormTerm { r: 0, a: RatFunc::one(p), i: -1, s: 0, b: RatFunc::one(p), j: 1 }
    }

    /// Multiplies by `V^r([α][t]^i)` on the left, which must currently be `[a][t]^i` (`r = 0`).
    pub fn times_monomial(&self, p: u32, r: usize, alpha: &RatFunc, i: i64) -> Self {
        assert_eq!(self.r, 0, "left factor must be a Teichmüller monomial");
        let q = pow_p(p, r);
        OneFormTerm {
            r,
            a: alpha.mul(&self.a.pow(q as u64)),
            i: i + self.i * q,
            s: self.s,
            b: self.b.clone(),
            j: self.j,
        }
    }
}

/// Residue of a single term in `W_n(K)`:
/// `sgn(j) gcd(i, j) V^{r+s-c}([a]^{p^{s-c}} [b]^{p^{r-c}})` when
/// `j p^r + i p^s = 0`, with `c = min(r, s)`; zero otherwise.
pub fn residue_term(p: u32, n: usize, t: &OneFormTerm) -> WittVec<RatFunc> {
    let zero = WittVec::zero(p, n, &RatFunc::zero(p));
    if t.j == 0 || t.r >= n || t.s >= n || t.a.is_zero() || t.b.is_zero() {
        return zero;
    }
    if t.j * pow_p(p, t.r) + t.i * pow_p(p, t.s) != 0 {
        return zero;
    }
    let c = t.r.min(t.s);
    let k = t.r + t.s - c;
    if k >= n {
        return zero;
    }
    let g = t.a.pow(pow_p(p, t.s - c) as u64).mul(&t.b.pow(pow_p(p, t.r - c) as u64));
    let mut comps = vec![RatFunc::zero(p); n];
    comps[k] = g;
    WittVec::new(p, comps).mul_int(t.j.signum() * gcd(t.i, t.j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::var;

    fn z(p: u32) -> RatFunc {
        RatFunc::var(var::z(1), p)
    }

    #[test]
    fn classical_residue() {
        // z t^{-1} dt = [z][t]^{-1} d[t]
        let t = OneFormTerm { r: 0, a: z(3), i: -1, s: 0, b: RatFunc::one(3), j: 1 };
        assert_eq!(residue_term(3, 2, &t), WittVec::teichmuller(3, 2, z(3)));
    }

    #[test]
    fn unmatched_exponents_vanish() {
        let t = OneFormTerm { r: 1, a: z(2), i: -1, s: 0, b: RatFunc::one(2), j: 1 };
        assert!(residue_term(2, 2, &t).is_zero());
    }

    #[test]
    fn verschiebung_of_coefficient() {
        for p in [2u32, 3, 5] {
            let t = OneFormTerm { r: 1, a: z(p), i: -(p as i64), s: 0, b: RatFunc::one(p), j: 1 };
            let mut comps = vec![RatFunc::zero(p); 2];
            comps[1] = z(p);
            assert_eq!(residue_term(p, 2, &t), WittVec::new(p, comps));
        }
    }

    #[test]
    fn shifted_pair_survives_beyond_naive_bound() {
        // V([a]) dV([b]) in W_2: j p + i p = 0 with i = -j
        let t = OneFormTerm { r: 1, a: z(2), i: -1, s: 1, b: RatFunc::one(2), j: 1 };
        let v = residue_term(2, 2, &t);
        assert_eq!(v.comp(1), &z(2));
    }
}
