//! Ramification filtrations on `W_n(K((t)))`: the log (Brylinski–Kato)
//! filtration, its non-log refinement (Matsuda), and explicit generators of
//! the graded pieces.

use serde::{Deserialize, Serialize};

use crate::algebra::{LaurentElem, RatFunc};
use crate::arith::{ord_p, pow_p, split_p};
use crate::witt::WittVec;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FiltrationKind {
    Log,
    Matsuda,
    FSat,
}

/// A filtration index; `0` is reserved for integral elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FiltrationLevel {
    pub value: u64,
    pub kind: FiltrationKind,
}

/// `p^{n-1-i} v(a_i)` for each component, `None` for a zero component.
fn weighted_valuations(a: &WittVec<LaurentElem>) -> Vec<Option<i64>> {
    let n = a.len();
    a.comps().iter().enumerate().map(|(i, c)| c.vmin().map(|v| pow_p(a.p(), n - 1 - i) * v)).collect()
}

pub fn log_member(a: &WittVec<LaurentElem>, j: u64) -> bool {
    let j = j as i64;
    weighted_valuations(a).into_iter().flatten().all(|w| w >= -j)
}

pub fn log_level(a: &WittVec<LaurentElem>) -> FiltrationLevel {
    FiltrationLevel { value: a.weighted_pole() as u64, kind: FiltrationKind::Log }
}

/// Membership in the non-log filtration for `j ≥ 1`: weighted valuations
/// `≥ -j`, strictly so at index `n-1-ord_p(j)` when `ord_p(j) < n`.
pub fn matsuda_member(a: &WittVec<LaurentElem>, j: u64) -> bool {
    assert!(j >= 1, "the non-log filtration starts at index 1");
    let n = a.len();
    let r = ord_p(j as i64, a.p()) as usize;
    let strict = (r < n).then(|| n - 1 - r);
    let j = j as i64;
    weighted_valuations(a).into_iter().enumerate().all(|(i, w)| match w {
        None => true,
        Some(w) if Some(i) == strict => w > -j,
        Some(w) => w >= -j,
    })
}

pub fn matsuda_level(a: &WittVec<LaurentElem>) -> FiltrationLevel {
    let log = a.weighted_pole() as u64;
    let value = if a.is_integral() {
        0
    } else if matsuda_member(a, log) {
        log
    } else {
        log + 1
    };
    FiltrationLevel { value, kind: FiltrationKind::Matsuda }
}

/// Where the coefficient of a generator template lives.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CoeffSpace {
    /// `b ∈ K`, entering through its Teichmüller lift.
    Teich,
    /// `c ∈ W_k(K)`.
    Witt(usize),
}

/// `c ↦ V^v(c · [t]^{t_exp})` into `W_n(L)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GeneratorTemplate {
    pub coeff: CoeffSpace,
    pub v: usize,
    pub t_exp: i64,
}

impl GeneratorTemplate {
    /// The generator for coefficient `c` (a single component under `Teich`).
    pub fn instantiate(&self, p: u32, n: usize, c: &WittVec<RatFunc>) -> WittVec<LaurentElem> {
        let len = n - self.v;
        let inner = match self.coeff {
            CoeffSpace::Teich => WittVec::teich_monomial(p, len, c.comp(0).clone(), self.t_exp),
            CoeffSpace::Witt(k) => {
                assert_eq!(k, len, "template coefficient length");
                let comps = c
                    .comps()
                    .iter()
                    .enumerate()
                    .map(|(i, ci)| LaurentElem::monomial(ci.clone(), self.t_exp * pow_p(p, i)))
                    .collect();
                WittVec::new(p, comps)
            }
        };
        inner.verschiebung(self.v)
    }

    pub fn render(&self) -> String {
        let body = match self.coeff {
            CoeffSpace::Teich => format!("[b t^{}]", self.t_exp),
            CoeffSpace::Witt(k) => format!("c[t]^{} (c in W_{k}(K))", self.t_exp),
        };
        match self.v {
            0 => body,
            v => format!("V^{v}({body})"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum GradedCase {
    /// `p ∤ r`, `r - 1 = p^{e1} r1`.
    Coprime { e1: u32 },
    /// `r = p^e r0` with `1 ≤ e ≤ n-1`.
    Mixed { e: u32 },
    /// `r = p^e r0` with `e ≥ n`.
    Deep { e: u32 },
}

/// Generators of `gr_r`: the direct sum of the template images maps
/// isomorphically onto the graded piece. No templates means `gr_r = 0`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GradedPiece {
    pub p: u32,
    pub n: usize,
    pub r: u64,
    pub kind: FiltrationKind,
    pub case: GradedCase,
    pub templates: Vec<GeneratorTemplate>,
}

/// `gr_r = fil_r / fil_{r-1}` of the non-log filtration on `W_n(L)`.
pub fn graded_generators(p: u32, n: usize, r: u64) -> GradedPiece {
    assert!(r >= 1 && n >= 1);
    let (e, r0) = split_p(r as i64, p);
    let top = GeneratorTemplate { coeff: CoeffSpace::Teich, v: n - 1, t_exp: -(r as i64 - 1) };
    let (case, templates) = if e == 0 {
        // gr_1 = W_n(O_L) / W_n(O_L) is recorded with e1 = n
        let (e1, r1) = if r == 1 { (n as u32, 0) } else { split_p(r as i64 - 1, p) };
        let t = if e1 as usize >= n {
            vec![]
        } else {
            vec![GeneratorTemplate { coeff: CoeffSpace::Teich, v: n - 1 - e1 as usize, t_exp: -r1 }]
        };
        (GradedCase::Coprime { e1 }, t)
    } else if (e as usize) < n {
        let c = GeneratorTemplate { coeff: CoeffSpace::Witt(e as usize), v: n - e as usize, t_exp: -r0 * p as i64 };
        (GradedCase::Mixed { e }, vec![top, c])
    } else {
        let c = GeneratorTemplate { coeff: CoeffSpace::Witt(n), v: 0, t_exp: -pow_p(p, e as usize - n + 1) * r0 };
        (GradedCase::Deep { e }, vec![top, c])
    };
    GradedPiece { p, n, r, kind: FiltrationKind::Matsuda, case, templates }
}

/// `gr^log_r = fil^log_r / fil^log_{r-1}` on `W_n(L)`.
pub fn graded_generators_log(p: u32, n: usize, r: u64) -> GradedPiece {
    assert!(r >= 1 && n >= 1);
    let (e, r0) = split_p(r as i64, p);
    let (case, template) = if (e as usize) < n {
        let case = match e {
            0 if r == 1 => GradedCase::Coprime { e1: n as u32 },
            0 => GradedCase::Coprime { e1: split_p(r as i64 - 1, p).0 },
            _ => GradedCase::Mixed { e },
        };
        (case, GeneratorTemplate { coeff: CoeffSpace::Witt(e as usize + 1), v: n - 1 - e as usize, t_exp: -r0 })
    } else {
        (GradedCase::Deep { e }, GeneratorTemplate { coeff: CoeffSpace::Witt(n), v: 0, t_exp: -pow_p(p, e as usize - n + 1) * r0 })
    };
    GradedPiece { p, n, r, kind: FiltrationKind::Log, case, templates: vec![template] }
}
