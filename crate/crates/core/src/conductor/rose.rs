use crate::algebra::{LaurentElem, RatFunc};
use crate::error::{Error, Result};
use crate::filtration::matsuda_level;
use crate::symbol::{local_symbol, CoeffField};
use crate::witt::WittVec;

use super::{descent_unit, ConductorKind, ConductorReport, DescentStep, SymbolTest, Verdict};

/// Rosenlicht–Serre conductor over a finite residue field `F_p`: the least
/// `n ≥ 1` with `(a, U^{(n)}) = 0` over the strict henselization, or `0` for
/// integral `a`.
///
/// `U^{(n)}` is generated by the `1 - c t^j`, `j ≥ n`, with `c` in the
/// algebraic closure of `F_p`; a free variable `x` stands for all such `c`
/// at once. Levels from the non-log level of `a` on pair trivially.
pub fn rose_conductor(a: &WittVec<LaurentElem>) -> Result<ConductorReport> {
    let p = a.p();
    for c in a.comps() {
        for (_, r) in c.terms() {
            if !r.num().vars().is_empty() || !r.den().vars().is_empty() {
                return Err(Error::Invalid("coefficients must lie in F_p".into()));
            }
        }
    }
    let top = matsuda_level(a).value;
    let mut report = ConductorReport::bare(0, ConductorKind::Rose);
    if top == 0 {
        return Ok(report);
    }
    let mut j = top as i64 - 1;
    while j >= 1 {
        let value: WittVec<RatFunc> = local_symbol(a, &descent_unit(p, j), CoeffField::Sigma0)?;
        let verdict = if value.is_zero() { Verdict::Zero } else { Verdict::Nonzero };
        let test = SymbolTest { sigma: CoeffField::Sigma0, unit: format!("1 - x*t^{j}"), value, verdict };
        report.descent_trace.push(DescentStep { level: j as u64 + 1, tests: vec![test] });
        if verdict == Verdict::Nonzero {
            break;
        }
        j -= 1;
    }
    report.value = j.max(0) as u64 + 1;
    Ok(report)
}
