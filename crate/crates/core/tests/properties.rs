use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use ramify::algebra::{LaurentElem, RatFunc};
use ramify::char0::{cdr_conductor, cdr_member, cdr_symbol, irregularity, ConnClass, DiffForm};
use ramify::conductor::{artin_conductor, kr_conductor, AswClass};
use ramify::filtration::{log_level, log_member, matsuda_level, matsuda_member};
use ramify::harness::{SampleParams, Sampler};
use ramify::parse::{parse_form, parse_witt, ParseContext};
use ramify::symbol::{local_symbol, CoeffField};
use ramify::witt::{canonical_form, recompose, CanonForm, WittVec};

fn sampler(p: u32, n: usize, m: usize, depth: i64, seed: u64) -> Sampler {
    Sampler::new(SampleParams { p, n, m, depth }, seed)
}

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5])
}

fn witt_pair(p: u32, n: usize, m: usize, depth: i64, seed: u64) -> (WittVec<LaurentElem>, WittVec<LaurentElem>) {
    let mut s = sampler(p, n, m, depth, seed);
    (s.element(), s.element())
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(0x72616d69), ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn field_axioms(p in prime(), seed in any::<u64>()) {
        let mut s = sampler(p, 1, 2, 1, seed);
        let (a, b, c) = (s.coeff().add(&s.coeff()), s.nonzero_coeff(), s.coeff().mul(&s.coeff()));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(b.mul(&b.inv().unwrap()), RatFunc::one(p));
        let q = a.div(&b).unwrap();
        prop_assert_eq!(q.mul(&b), a);
    }

    #[test]
    fn pth_roots(p in prime(), seed in any::<u64>()) {
        let mut s = sampler(p, 1, 2, 1, seed);
        let c = s.coeff().add(&s.coeff().mul(&s.coeff()));
        prop_assert_eq!(c.pow(p as u64).pth_root(), Some(c.clone()));
        if let Some(r) = c.pth_root() {
            prop_assert_eq!(r.pow(p as u64), c);
        }
    }

    #[test]
    fn valuations(p in prime(), seed in any::<u64>()) {
        let mut s = sampler(p, 1, 2, 4, seed);
        let a = s.laurent(4, 3, 0.5);
        let b = s.laurent(4, 3, 0.5);
        if let (Some(va), Some(vb)) = (a.valuation(), b.valuation()) {
            prop_assert_eq!(a.mul(&b).valuation(), Some(va + vb));
            if let Some(vs) = a.add(&b).valuation() {
                prop_assert!(vs >= va.min(vb));
            }
        }
    }

    #[test]
    fn frobenius_is_a_ring_map(p in prime(), n in 1usize..=3, seed in any::<u64>()) {
        let (a, b) = witt_pair(p, n, 1, 3, seed);
        prop_assert_eq!(a.add(&b).frob(), a.frob().add(&b.frob()));
        prop_assert_eq!(a.mul(&b).frob(), a.frob().mul(&b.frob()));
    }

    #[test]
    fn canonical_form_is_unique(p in prime(), n in 1usize..=3, m in 0usize..=2, seed in any::<u64>()) {
        let a = sampler(p, n, m, 5, seed).element();
        let c = canonical_form(&a).unwrap();
        prop_assert_eq!(recompose(&c), a);
        prop_assert_eq!(canonical_form(&recompose(&c)).unwrap(), c);
    }

    #[test]
    fn filtrations_are_monotone_and_nested(p in prime(), n in 1usize..=3, m in 0usize..=2, seed in any::<u64>()) {
        let a = sampler(p, n, m, 5, seed).element();
        let (l, mt) = (log_level(&a).value, matsuda_level(&a).value);
        prop_assert!(l <= mt && mt <= l + 1);
        for j in 1..=l + 2 {
            if log_member(&a, j) {
                prop_assert!(log_member(&a, j + 1));
            }
            if matsuda_member(&a, j) {
                prop_assert!(matsuda_member(&a, j + 1));
            }
        }
    }

    #[test]
    fn levels_are_sub_maximal(p in prime(), n in 1usize..=3, seed in any::<u64>()) {
        let (a, b) = witt_pair(p, n, 1, 5, seed);
        let s = a.add(&b);
        prop_assert!(log_level(&s).value <= log_level(&a).value.max(log_level(&b).value));
        prop_assert!(matsuda_level(&s).value <= matsuda_level(&a).value.max(matsuda_level(&b).value));
    }

    #[test]
    fn symbols_are_bilinear(p in prime(), n in 1usize..=2, seed in any::<u64>(), twisted in any::<bool>()) {
        let mut s = sampler(p, n, 1, 3, seed);
        let (a, b) = (s.element(), s.element());
        let (f, g) = (s.function(), s.function());
        let sigma = if twisted { CoeffField::Sigma1 { e: 1 } } else { CoeffField::Sigma0 };
        let sym = |x: &WittVec<LaurentElem>, u: &LaurentElem| local_symbol(x, u, sigma).unwrap();
        prop_assert_eq!(sym(&a.add(&b), &f), sym(&a, &f).add(&sym(&b, &f)));
        prop_assert_eq!(sym(&a, &f.mul(&g)), sym(&a, &f).add(&sym(&a, &g)));
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn kr_is_bounded_by_matsuda(p in prime(), n in 1usize..=3, m in 0usize..=2, seed in any::<u64>()) {
        let a = sampler(p, n, m, 5, seed).element();
        let kr = kr_conductor(&a).unwrap().value;
        let mt = matsuda_level(&a).value;
        prop_assert!(kr <= mt && mt <= log_level(&a).value + 1);
        prop_assert_eq!(kr == 0, a.is_integral());
    }

    #[test]
    fn frobenius_does_not_raise_kr(p in prime(), n in 1usize..=2, m in 0usize..=2, seed in any::<u64>()) {
        let a = sampler(p, n, m, 6 / p as i64, seed).element();
        prop_assert!(kr_conductor(&a.frob()).unwrap().value <= kr_conductor(&a).unwrap().value);
    }

    #[test]
    fn artin_ignores_frobenius_shifts(p in prime(), n in 1usize..=2, m in 0usize..=1, seed in any::<u64>()) {
        let mut s = sampler(p, n, m, 4, seed);
        let a = s.element();
        let b = sampler(p, n, 1, 6 / p as i64, seed ^ 0x5eed).witt();
        let shifted = a.add(&b.frob().sub(&b));
        let before = artin_conductor(&AswClass::new(a)).unwrap();
        let after = artin_conductor(&AswClass::new(shifted)).unwrap();
        prop_assert_eq!(before.interval, None);
        prop_assert_eq!(after.interval, None);
        prop_assert_eq!(before.value, after.value);
    }

    #[test]
    fn d_squares_to_zero(m in 1usize..=2, q in 0usize..=1, seed in any::<u64>()) {
        let a = sampler(0, 1, m, 4, seed).form(q);
        prop_assert!(a.d().d().is_zero());
    }

    #[test]
    fn d_respects_the_pole_window(m in 1usize..=2, q in 0usize..=1, seed in any::<u64>()) {
        let a = sampler(0, 1, m, 4, seed).form(q);
        for n in 1..=6u64 {
            if cdr_member(&a, n).unwrap() {
                prop_assert!(cdr_member(&a.d(), n + 1).unwrap());
            }
        }
    }

    #[test]
    fn symbols_detect_the_de_rham_conductor(m in 1usize..=2, q in 1usize..=2, seed in any::<u64>()) {
        let a = sampler(0, 1, m, 4, seed).form(q);
        let c = cdr_conductor(&a).unwrap() as i64;
        if c >= 2 {
            prop_assert!(!cdr_symbol(&a, c - 1).unwrap().is_zero());
        }
        for r in c.max(1)..c.max(1) + 3 {
            prop_assert!(cdr_symbol(&a, r).unwrap().is_zero());
        }
    }

    #[test]
    fn gauge_twists_keep_irregularity(m in 1usize..=2, seed in any::<u64>(), k in -3i64..=3, j in 1i64..=4) {
        let mut s = sampler(0, 1, m, 4, seed);
        let e = ConnClass::new(s.form(1)).unwrap();
        let c = Sampler::pool_q(m)[1 + (seed % 4) as usize].clone();
        let one = RatFunc::one(0);
        let f = LaurentElem::from_terms(0, [(k, one), (k + j, c)], None);
        let twisted = e.twist(&f, 8).unwrap();
        prop_assert_eq!(irregularity(&twisted).unwrap(), irregularity(&e).unwrap());
    }

    #[test]
    fn text_round_trips(p in prime(), n in 1usize..=3, m in 0usize..=2, seed in any::<u64>()) {
        let a = sampler(p, n, m, 6, seed).element();
        prop_assert_eq!(parse_witt(&a.to_string(), &ParseContext::new(p, n)).unwrap(), a);
        // "0" carries no degree
        let w = sampler(0, 1, m, 4, seed).form(1);
        if !w.is_zero() {
            prop_assert_eq!(parse_form(&w.to_string(), &ParseContext::new(0, 1)).unwrap(), w);
        }
    }

    #[test]
    fn json_round_trips(p in prime(), n in 1usize..=3, m in 0usize..=2, seed in any::<u64>()) {
        let a = sampler(p, n, m, 6, seed).element();
        let back: WittVec<LaurentElem> = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(&back, &a);
        let c = canonical_form(&a).unwrap();
        let back: CanonForm = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        prop_assert_eq!(back, c);
        let w = sampler(0, 1, m, 4, seed).form(1);
        let back: DiffForm = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
        prop_assert_eq!(back, w);
    }
}
