//! Power-series model: `(a_0, …, a_{n-1}) ↦ Π (1 - a_i T^{p^i})` in
//! `1 + T·A[[T]]`, modulo the factors `1 - b T^m` with `m` not a power of `p`.

use super::WittVec;
use crate::algebra::Ring;
use crate::error::{Error, Result};

fn mul_trunc<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    let cap = a.len();
    let mut out = vec![a[0].zero_like(); cap];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(cap - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

fn check_cap(p: u32, n: usize, cap: usize) -> Result<()> {
    let need = (p as usize).pow(n as u32 - 1) + 1;
    if cap < need {
        return Err(Error::ShapeMismatch(format!("series cap {cap} below {need}")));
    }
    Ok(())
}

/// Coefficients of `T^0..T^{cap-1}` of `Π (1 - a_i T^{p^i})`.
pub fn ps_encode<R: Ring>(a: &WittVec<R>, cap: usize) -> Result<Vec<R>> {
    check_cap(a.p(), a.len(), cap)?;
    let like = a.comp(0);
    let mut acc = vec![like.zero_like(); cap];
    acc[0] = like.one_like();
    let mut deg = 1usize;
    for c in a.comps() {
        if !c.is_zero() {
            let mut f = vec![like.zero_like(); cap];
            f[0] = like.one_like();
            f[deg] = c.neg();
            acc = mul_trunc(&acc, &f);
        }
        deg *= a.p() as usize;
    }
    Ok(acc)
}

/// Greedy factorization `s = Π_{m≥1} (1 - b_m T^m)`; returns `b_1..b_{cap-1}`.
pub fn ps_factor<R: Ring>(series: &[R]) -> Vec<R> {
    let cap = series.len();
    let mut s = series.to_vec();
    let mut bs = vec![series[0].zero_like(); cap];
    for m in 1..cap {
        let b = s[m].neg();
        if b.is_zero() {
            continue;
        }
        // divide by (1 - b T^m), i.e. multiply by Σ b^k T^{mk}
        let mut geo = vec![series[0].zero_like(); cap];
        let mut pw = series[0].one_like();
        let mut k = 0;
        while k < cap {
            geo[k] = pw.clone();
            pw = pw.mul(&b);
            k += m;
        }
        s = mul_trunc(&s, &geo);
        bs[m] = b;
    }
    bs
}

/// The `p`-typical normal form `(b_1, b_p, …, b_{p^{n-1}})`.
pub fn ps_normal_form<R: Ring>(p: u32, n: usize, series: &[R]) -> Result<WittVec<R>> {
    check_cap(p, n, series.len())?;
    if !series[0].sub(&series[0].one_like()).is_zero() {
        return Err(Error::Invalid("series must have constant term 1".into()));
    }
    let bs = ps_factor(series);
    let comps = (0..n).map(|i| bs[(p as usize).pow(i as u32)].clone()).collect();
    Ok(WittVec::new(p, comps))
}

/// Inverse of [`ps_encode`] on normal-form representatives.
pub fn ps_decode<R: Ring>(p: u32, n: usize, series: &[R]) -> Result<WittVec<R>> {
    ps_normal_form(p, n, series)
}

/// Product of two encodings (the group law on `1 + T·A[[T]]`).
pub fn ps_mul<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    mul_trunc(a, b)
}
