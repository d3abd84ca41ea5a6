use crate::algebra::{LaurentElem, RatFunc};
use crate::arith::{ord_p, pow_p};
use crate::error::{Error, Result};
use crate::filtration::{matsuda_level, matsuda_member};
use crate::witt::WittVec;

use super::{descent_fields, symbol_tests, z_count, ConductorKind, ConductorReport, Verdict};

fn zero_test(v: &WittVec<RatFunc>) -> Verdict {
    if v.is_zero() {
        Verdict::Zero
    } else {
        Verdict::Nonzero
    }
}

/// The Kato–Russell conductor `γ(a) = min { j ≥ 1 : a ∈ fil^F_j }`, or `0`
/// for integral `a`.
///
/// Starts at the non-log level of `a` and lowers it while every required
/// symbol `(a, 1 - x t^{r-1})` vanishes. A strict drop below the non-log
/// level comes with a decomposition `Σ F^r(a_r)`, when one is found by
/// greedy Frobenius preimages.
pub fn kr_conductor(a: &WittVec<LaurentElem>) -> Result<ConductorReport> {
    let start = matsuda_level(a).value;
    let mut report = ConductorReport::bare(0, ConductorKind::Kr);
    if start == 0 {
        return Ok(report);
    }
    let p = a.p();
    let m = z_count(a);
    let mut r = start;
    loop {
        if r < 2 {
            return Err(Error::Invalid("descent passed level 2 for a non-integral vector".into()));
        }
        let step = symbol_tests(a, r, &descent_fields(p, r, m), zero_test)?;
        let done = !step.vanishes();
        report.descent_trace.push(step);
        if done {
            break;
        }
        r -= 1;
    }
    report.value = r;
    if r < start {
        report.certificate = kr_certificate(a, r);
    }
    Ok(report)
}

/// Removes from `x` the terms breaking membership in `fil_j` by writing them
/// as Frobenius images, component by component; returns the remainder and
/// the accumulated preimage.
fn split_piece(x: &WittVec<LaurentElem>, j: u64) -> Option<(WittVec<LaurentElem>, WittVec<LaurentElem>)> {
    let p = x.p();
    let n = x.len();
    let o = ord_p(j as i64, p) as usize;
    let strict = (o < n).then(|| n - 1 - o);
    let j = j as i64;
    let mut cur = x.clone();
    let mut pre = WittVec::zero(p, n, &LaurentElem::zero(p));
    for k in 0..n {
        let weight = pow_p(p, n - 1 - k);
        let mut roots = Vec::new();
        for (e, c) in cur.comp(k).terms() {
            if *e >= 0 {
                break;
            }
            let w = -e * weight;
            if w < j || (w == j && strict != Some(k)) {
                continue;
            }
            if e % p as i64 != 0 {
                return None;
            }
            roots.push((e / p as i64, c.pth_root()?));
        }
        if roots.is_empty() {
            continue;
        }
        let h = LaurentElem::from_terms(p, roots, None);
        let y = WittVec::teichmuller(p, n - k, h).verschiebung(k);
        cur = cur.sub(&y.frob());
        pre = pre.add(&y);
    }
    Some((cur, pre))
}

/// Pieces `a_0, a_1, …` in `fil_j` with `a = Σ F^r(a_r)`, verified by
/// recomposition; `None` when the greedy search does not find them.
pub fn kr_certificate(a: &WittVec<LaurentElem>, j: u64) -> Option<Vec<WittVec<LaurentElem>>> {
    let mut pieces = Vec::new();
    let mut x = a.clone();
    for _ in 0..64 {
        if matsuda_member(&x, j) {
            pieces.push(x);
            return (recompose_certificate(&pieces).as_ref() == Some(a)).then_some(pieces);
        }
        let (rest, pre) = split_piece(&x, j)?;
        if !matsuda_member(&rest, j) {
            return None;
        }
        pieces.push(rest);
        x = pre;
    }
    None
}

/// `Σ_r F^r(a_r)`.
pub fn recompose_certificate(pieces: &[WittVec<LaurentElem>]) -> Option<WittVec<LaurentElem>> {
    let first = pieces.first()?;
    let mut acc = WittVec::zero(first.p(), first.len(), &LaurentElem::zero(first.p()));
    for (r, a) in pieces.iter().enumerate() {
        acc = acc.add(&a.frob_pow(r as u32));
    }
    Some(acc)
}
