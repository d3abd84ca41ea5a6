//! The monomialwise `σ_1` transport inside `local_symbol` against an
//! independent route: transport every series of `a` and `f` into the
//! `y`-coordinates to a generous precision, then evaluate under `σ_0`.

use ramify::algebra::{var, LaurentElem, RatFunc};
use ramify::symbol::{local_symbol, local_symbol_at, CoeffField};
use ramify::witt::WittVec;

fn full_transport(a: &WittVec<LaurentElem>, f: &LaurentElem, sigma: CoeffField, depth: i64) -> WittVec<RatFunc> {
    let p = a.p();
    let n = a.len();
    let prec = 2 * (p as i64).pow(n as u32 - 1) * depth + 10;
    let a_s = sigma.transport_witt(a, prec).unwrap();
    let f_s = sigma.transport(f, prec).unwrap();
    local_symbol_at(&a_s, &f_s, CoeffField::Sigma0, prec).unwrap()
}

fn sample(p: u32, n: usize) -> WittVec<LaurentElem> {
    let z = RatFunc::var(var::z(1), p);
    let one = RatFunc::one(p);
    let comps = (0..n)
        .map(|k| LaurentElem::from_terms(p, [(-3 + k as i64, z.add(&one)), (-2, z.pow(2)), (1, one.clone())], None))
        .collect();
    WittVec::new(p, comps)
}

#[test]
fn sigma1_matches_full_transport() {
    for p in [2u32, 3, 5] {
        for n in 1..=3usize {
            if p == 5 && n == 3 {
                continue;
            }
            let a = sample(p, n);
            let z = RatFunc::var(var::z(1), p);
            let x = RatFunc::var(var::X, p);
            let one = RatFunc::one(p);
            for lam in [0i64, 1, 2, 3, 5, 9] {
                let f = if lam == 0 {
                    LaurentElem::from_terms(p, [(1, one.clone()), (3, z.clone())], None)
                } else {
                    LaurentElem::from_terms(p, [(0, one.clone()), (lam, x.neg())], None)
                };
                for e in 1..=2u32 {
                    let sigma = CoeffField::Sigma1 { e };
                    let fast = local_symbol(&a, &f, sigma).unwrap();
                    assert_eq!(fast, full_transport(&a, &f, sigma, 3), "p={p} n={n} lambda={lam} e={e}");
                }
            }
        }
    }
}

#[test]
fn sigma0_is_transport_free() {
    let p = 3;
    let a = sample(p, 2);
    let f = LaurentElem::from_terms(p, [(0, RatFunc::one(p)), (2, RatFunc::var(var::X, p).neg())], None);
    assert_eq!(local_symbol(&a, &f, CoeffField::Sigma0).unwrap(), full_transport(&a, &f, CoeffField::Sigma0, 3));
}
