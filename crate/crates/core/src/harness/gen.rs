use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{var, LaurentElem, RatFunc};
use crate::char0::{DiffForm, Wedge};
use crate::witt::WittVec;

/// Parameters of a random element: characteristic, Witt length, number of
/// `z`-variables and the deepest pole.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SampleParams {
    pub p: u32,
    pub n: usize,
    pub m: usize,
    pub depth: i64,
}

/// Deterministic generator of coefficients from `{0, ±1, z, z + 1, z^p}` and
/// of Laurent polynomials and Witt vectors built from them.
pub struct Sampler {
    rng: ChaCha8Rng,
    pub params: SampleParams,
}

impl Sampler {
    pub fn new(params: SampleParams, seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), params }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// The coefficient pool, with `z` ranging over `z_1, …, z_m`.
    pub fn pool(p: u32, m: usize) -> Vec<RatFunc> {
        let one = RatFunc::one(p);
        let mut out = vec![RatFunc::zero(p), one.clone(), one.neg()];
        for i in 1..=m {
            let z = RatFunc::var(var::z(i), p);
            out.push(z.clone());
            out.push(z.add(&one));
            out.push(z.pow(p as u64));
        }
        out
    }

    pub fn coeff(&mut self) -> RatFunc {
        let pool = Self::pool(self.params.p, self.params.m);
        pool.choose(&mut self.rng).unwrap().clone()
    }

    pub fn nonzero_coeff(&mut self) -> RatFunc {
        loop {
            let c = self.coeff();
            if !c.is_zero() {
                return c;
            }
        }
    }

    /// A Laurent polynomial with exponents in `[-depth, top]`, each present
    /// with probability `density`.
    pub fn laurent(&mut self, depth: i64, top: i64, density: f64) -> LaurentElem {
        let p = self.params.p;
        let mut terms = Vec::new();
        for e in -depth..=top {
            if self.rng.gen_bool(density) {
                terms.push((e, self.coeff()));
            }
        }
        LaurentElem::from_terms(p, terms, None)
    }

    /// A random vector whose component `i` has poles of order at most
    /// `depth`, plus a few integral terms.
    pub fn witt(&mut self) -> WittVec<LaurentElem> {
        let SampleParams { p, n, depth, .. } = self.params;
        let comps = (0..n).map(|_| self.laurent(depth, 1, 0.3)).collect();
        WittVec::new(p, comps)
    }

    /// Sums of Teichmüller monomials `V^r([c][t]^{-i})` and of Frobenius
    /// images of such sums, so that the F-saturated and the non-log
    /// filtrations often differ.
    pub fn witt_structured(&mut self) -> WittVec<LaurentElem> {
        let SampleParams { p, n, depth, .. } = self.params;
        let mut acc = WittVec::zero(p, n, &LaurentElem::zero(p));
        let count = self.rng.gen_range(1..=3);
        for _ in 0..count {
            let twist = if depth >= p as i64 { self.rng.gen_range(0..=1u32) } else { 0 };
            let reach = (depth / (p as i64).pow(twist)).max(1);
            let r = self.rng.gen_range(0..n);
            let i = self.rng.gen_range(1..=reach);
            let c = self.nonzero_coeff();
            let mono = WittVec::teich_monomial(p, n - r, c, -i).verschiebung(r);
            acc = acc.add(&mono.frob_pow(twist));
        }
        acc
    }

    /// Either kind of sample, evenly.
    pub fn element(&mut self) -> WittVec<LaurentElem> {
        if self.rng.gen_bool(0.5) {
            self.witt()
        } else {
            self.witt_structured()
        }
    }

    /// An integral vector: components supported on `t^0, t^1, t^2`.
    pub fn witt_integral(&mut self) -> WittVec<LaurentElem> {
        let SampleParams { p, n, .. } = self.params;
        let comps = (0..n).map(|_| self.laurent(0, 2, 0.5)).collect();
        WittVec::new(p, comps)
    }

    /// `1 + Σ c_e t^e` with `e` in `[lo, lo + 2]`, `lo ≥ 1`.
    pub fn unit(&mut self, lo: i64) -> LaurentElem {
        let p = self.params.p;
        let mut terms = vec![(0, RatFunc::one(p))];
        for e in lo..lo + 3 {
            if self.rng.gen_bool(0.6) {
                terms.push((e, self.coeff()));
            }
        }
        LaurentElem::from_terms(p, terms, None)
    }

    /// `c t^k u` with `c` a nonzero pool element, `|k| ≤ 2` and `u` a 1-unit.
    pub fn function(&mut self) -> LaurentElem {
        let k = self.rng.gen_range(-2..=2);
        let c = self.nonzero_coeff();
        let u = self.unit(1);
        u.mul(&LaurentElem::monomial(c, k))
    }

    /// Coefficient pool over `Q`: `{0, ±1, 1/2, z_i, z_i + 1}`.
    pub fn pool_q(m: usize) -> Vec<RatFunc> {
        let one = RatFunc::one(0);
        let half = one.div(&RatFunc::from_i64(2, 0)).unwrap();
        let mut out = vec![RatFunc::zero(0), one.clone(), one.neg(), half];
        for i in 1..=m {
            let z = RatFunc::var(var::z(i), 0);
            out.push(z.clone());
            out.push(z.add(&one));
        }
        out
    }

    /// A Laurent polynomial over `Q(z)` with exponents in `[-depth, top]`.
    pub fn laurent_q(&mut self, depth: i64, top: i64, density: f64) -> LaurentElem {
        let pool = Self::pool_q(self.params.m);
        let mut terms = Vec::new();
        for e in -depth..=top {
            if self.rng.gen_bool(density) {
                terms.push((e, pool.choose(&mut self.rng).unwrap().clone()));
            }
        }
        LaurentElem::from_terms(0, terms, None)
    }

    /// A random `q`-form over `Q(z)((t))` in the log basis, `q ≤ m + 1`.
    pub fn form(&mut self, q: usize) -> DiffForm {
        let SampleParams { m, depth, .. } = self.params;
        let mut terms = Vec::new();
        for mask in 0u32..(1 << (m + 1)) {
            if mask.count_ones() as usize != q {
                continue;
            }
            let vars = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| var::z(i + 1)).collect();
            let w = Wedge { vars, dlog_t: mask >> m & 1 == 1 };
            let d = self.rng.gen_range(0..=depth);
            terms.push((w, self.laurent_q(d, 1, 0.4)));
        }
        DiffForm::from_terms(0, q, terms).unwrap()
    }
}
