use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{var, LaurentElem, RatFunc, VarId};
use crate::char0::{cdr_conductor, cdr_member, conn_conductor, ConnClass, DiffForm, Wedge};
use crate::conductor::{alpha_p_conductor, alpha_p_reduce, artin_conductor, asw_reduce, kr_conductor, rose_conductor, AswClass};
use crate::error::{Error, Result};
use crate::filtration::{log_level, matsuda_level};
use crate::symbol::{local_symbol, CoeffField};
use crate::witt::WittVec;

use super::gen::{SampleParams, Sampler};

/// An input to a conductor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Element {
    Witt(WittVec<LaurentElem>),
    Laurent(LaurentElem),
    Form(DiffForm),
}

impl Element {
    pub fn add(&self, o: &Element) -> Result<Element> {
        match (self, o) {
            (Element::Witt(a), Element::Witt(b)) => a.try_add(b).map(Element::Witt),
            (Element::Laurent(a), Element::Laurent(b)) => Ok(Element::Laurent(a.add(b))),
            (Element::Form(a), Element::Form(b)) => a.add(b).map(Element::Form),
            _ => Err(Error::ShapeMismatch("elements of different kinds".into())),
        }
    }

    /// Integral vector, integral function, or regular form.
    pub fn is_integral(&self) -> Result<bool> {
        match self {
            Element::Witt(a) => Ok(a.is_integral()),
            Element::Laurent(a) => Ok(a.is_integral()),
            Element::Form(a) => cdr_member(a, 0),
        }
    }

    /// `v := value` in every coefficient. For forms `value` must be a
    /// constant, so that `dv` becomes `0`.
    pub fn specialize(&self, v: VarId, value: &RatFunc) -> Result<Element> {
        let sub = |f: &LaurentElem| f.try_map_coeffs(|c| c.substitute(v, value));
        match self {
            Element::Witt(a) => a.try_map(sub).map(Element::Witt),
            Element::Laurent(a) => sub(a).map(Element::Laurent),
            Element::Form(a) => {
                if value.constant_value().is_none() {
                    return Err(Error::Invalid("forms specialize only at constants".into()));
                }
                let mut terms = Vec::new();
                for (w, f) in a.terms() {
                    if !w.vars.contains(&v) {
                        terms.push((w.clone(), sub(f)?));
                    }
                }
                DiffForm::from_terms(a.characteristic(), a.degree(), terms).map(Element::Form)
            }
        }
    }

    fn characteristic(&self) -> u32 {
        match self {
            Element::Witt(a) => a.p(),
            Element::Laurent(a) => a.characteristic(),
            Element::Form(a) => a.characteristic(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Witt(a) => write!(f, "{a}"),
            Element::Laurent(a) => write!(f, "{a}"),
            Element::Form(a) => write!(f, "{a}"),
        }
    }
}

type Evaluate = Arc<dyn Fn(&Element) -> Result<Option<u64>> + Send + Sync>;
type Witness = Arc<dyn Fn(&Element) -> Result<Element> + Send + Sync>;
type Generate = Arc<dyn Fn(&mut Sampler) -> Element + Send + Sync>;

/// A conductor together with the elements it is tested on. `evaluate`
/// returns `None` when the value could not be decided; `witness` returns a
/// representative of the same class that is integral when the level is `0`.
#[derive(Clone)]
pub struct ConductorUnderTest {
    pub name: String,
    pub params: SampleParams,
    evaluate: Evaluate,
    witness: Witness,
    generate: Generate,
}

fn witt(e: &Element) -> Result<&WittVec<LaurentElem>> {
    match e {
        Element::Witt(a) => Ok(a),
        _ => Err(Error::ShapeMismatch("expected a Witt vector".into())),
    }
}

fn laurent(e: &Element) -> Result<&LaurentElem> {
    match e {
        Element::Laurent(a) => Ok(a),
        _ => Err(Error::ShapeMismatch("expected a Laurent series".into())),
    }
}

fn form(e: &Element) -> Result<&DiffForm> {
    match e {
        Element::Form(a) => Ok(a),
        _ => Err(Error::ShapeMismatch("expected a differential form".into())),
    }
}

/// `ω - k dlog t` when the residue `k` of `ω` is an integer.
fn untwist(omega: &DiffForm) -> Result<DiffForm> {
    let res = omega.coeff(&Wedge::dlog_t()).coeff_checked(0)?;
    match res.constant_value().and_then(|c| c.as_integer()) {
        Some(_) => omega.sub(&DiffForm::dlog_t(0).scale(&LaurentElem::constant(res))),
        None => Ok(omega.clone()),
    }
}

impl ConductorUnderTest {
    pub fn new(
        name: impl Into<String>,
        params: SampleParams,
        evaluate: impl Fn(&Element) -> Result<Option<u64>> + Send + Sync + 'static,
        witness: impl Fn(&Element) -> Result<Element> + Send + Sync + 'static,
        generate: impl Fn(&mut Sampler) -> Element + Send + Sync + 'static,
    ) -> Self {
        ConductorUnderTest {
            name: name.into(),
            params,
            evaluate: Arc::new(evaluate),
            witness: Arc::new(witness),
            generate: Arc::new(generate),
        }
    }

    pub const NAMES: [&'static str; 8] = ["kr", "artin", "matsuda", "log", "alpha-p", "rose", "dr", "irr"];

    /// The registered conductors. `rose` forces `m = 0`; `dr` tests 1-forms.
    pub fn named(name: &str, params: SampleParams) -> Result<Self> {
        let same = |e: &Element| Ok(e.clone());
        let c = match name {
            "kr" => Self::new(name, params, |e| Ok(Some(kr_conductor(witt(e)?)?.value)), same, |s| {
                Element::Witt(s.element())
            }),
            "matsuda" => Self::new(name, params, |e| Ok(Some(matsuda_level(witt(e)?).value)), same, |s| {
                Element::Witt(s.element())
            }),
            "log" => Self::new(name, params, |e| Ok(Some(log_level(witt(e)?).value)), same, |s| {
                Element::Witt(s.element())
            }),
            "artin" => Self::new(
                name,
                params,
                |e| {
                    let r = artin_conductor(&AswClass::new(witt(e)?.clone()))?;
                    Ok(r.interval.is_none().then_some(r.value))
                },
                |e| asw_reduce(witt(e)?).map(Element::Witt),
                |s| Element::Witt(s.element()),
            ),
            "alpha-p" => Self::new(
                name,
                params,
                |e| Ok(Some(alpha_p_conductor(laurent(e)?).value)),
                |e| Ok(Element::Laurent(alpha_p_reduce(laurent(e)?))),
                |s| {
                    let depth = s.params.depth;
                    let mut b = s.laurent(depth, 1, 0.4);
                    if s.rng().gen_bool(0.5) {
                        let p = s.params.p as i64;
                        b = b.add(&s.laurent(depth / p, 0, 0.5).frob());
                    }
                    Element::Laurent(b)
                },
            ),
            "rose" => {
                let params = SampleParams { m: 0, ..params };
                Self::new(name, params, |e| Ok(Some(rose_conductor(witt(e)?)?.value)), same, |s| {
                    Element::Witt(s.element())
                })
            }
            "dr" => Self::new(name, params, |e| Ok(Some(cdr_conductor(form(e)?)?)), same, |s| Element::Form(s.form(1))),
            "irr" => Self::new(
                name,
                params,
                |e| Ok(Some(conn_conductor(&ConnClass::new(form(e)?.clone())?)?)),
                |e| untwist(form(e)?).map(Element::Form),
                |s| Element::Form(s.form(1)),
            ),
            _ => return Err(Error::Invalid(format!("unknown conductor {name}"))),
        };
        Ok(c)
    }

    pub fn evaluate(&self, e: &Element) -> Result<Option<u64>> {
        (self.evaluate)(e)
    }

    pub fn witness(&self, e: &Element) -> Result<Element> {
        (self.witness)(e)
    }

    /// `count` elements drawn deterministically from `seed`.
    pub fn sample(&self, seed: u64, count: usize) -> Vec<Element> {
        let mut s = Sampler::new(self.params, seed);
        (0..count).map(|_| (self.generate)(&mut s)).collect()
    }
}


#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Failure {
    pub index: usize,
    pub detail: String,
}

/// Outcome of one check over a batch of samples.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub conductor: String,
    pub check: String,
    pub params: SampleParams,
    pub samples: usize,
    /// Samples on which the law had content and was verified.
    pub checked: usize,
    pub vacuous: usize,
    pub undecided: usize,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub const CSV_HEADER: &'static str = "conductor,check,p,n,m,depth,samples,checked,vacuous,undecided,failures";

    pub fn csv_row(&self) -> String {
        let SampleParams { p, n, m, depth } = self.params;
        format!(
            "{},{},{p},{n},{m},{depth},{},{},{},{},{}",
            self.conductor,
            self.check,
            self.samples,
            self.checked,
            self.vacuous,
            self.undecided,
            self.failures.len()
        )
    }
}

enum Outcome {
    Checked,
    Vacuous,
    Undecided,
    Failed(String),
}

fn collect(conductor: &str, check: &str, params: SampleParams, outcomes: Vec<Outcome>) -> CheckReport {
    let mut r = CheckReport {
        conductor: conductor.into(),
        check: check.into(),
        params,
        samples: outcomes.len(),
        checked: 0,
        vacuous: 0,
        undecided: 0,
        failures: Vec::new(),
    };
    for (index, o) in outcomes.into_iter().enumerate() {
        match o {
            Outcome::Checked => r.checked += 1,
            Outcome::Vacuous => r.vacuous += 1,
            Outcome::Undecided => r.undecided += 1,
            Outcome::Failed(detail) => r.failures.push(Failure { index, detail }),
        }
    }
    r
}

fn settle(f: impl FnOnce() -> Result<Outcome>) -> Outcome {
    f().unwrap_or_else(|e| Outcome::Failed(format!("error: {e}")))
}

/// (c1): level `0` forces an integral representative.
pub fn check_c1(c: &ConductorUnderTest, samples: &[Element]) -> CheckReport {
    let out = samples
        .par_iter()
        .map(|a| {
            settle(|| match c.evaluate(a)? {
                None => Ok(Outcome::Undecided),
                Some(v) if v > 0 => Ok(Outcome::Vacuous),
                Some(_) => {
                    let w = c.witness(a)?;
                    Ok(if w.is_integral()? {
                        Outcome::Checked
                    } else {
                        Outcome::Failed(format!("level 0 but witness {w} is not integral (input {a})"))
                    })
                }
            })
        })
        .collect();
    collect(&c.name, "c1", c.params, out)
}

/// (c2): `c(a + b) ≤ max(c(a), c(b))`.
pub fn check_c2(c: &ConductorUnderTest, pairs: &[(Element, Element)]) -> CheckReport {
    let out = pairs
        .par_iter()
        .map(|(a, b)| {
            settle(|| {
                let (Some(x), Some(y), Some(s)) = (c.evaluate(a)?, c.evaluate(b)?, c.evaluate(&a.add(b)?)?) else {
                    return Ok(Outcome::Undecided);
                };
                Ok(if s <= x.max(y) {
                    Outcome::Checked
                } else {
                    Outcome::Failed(format!("c(a+b) = {s} > max({x}, {y}) for a = {a}, b = {b}"))
                })
            })
        })
        .collect();
    collect(&c.name, "c2", c.params, out)
}

/// Values substituted for `z_1` in the specialization check.
pub fn specialization_values(ch: u32, m: usize) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::zero(ch), RatFunc::one(ch), RatFunc::from_i64(-1, ch)];
    if ch == 0 {
        out.push(RatFunc::one(0).div(&RatFunc::from_i64(2, 0)).unwrap());
    } else if m >= 2 {
        out.push(RatFunc::var(var::z(2), ch));
    }
    out
}

/// Local shadow of (c6): specializing `z_1 ↦ λ` never raises the level.
pub fn check_c6(c: &ConductorUnderTest, samples: &[Element]) -> CheckReport {
    let out = samples
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            settle(|| {
                let values = specialization_values(a.characteristic(), c.params.m);
                let lambda = &values[i % values.len()];
                let Ok(b) = a.specialize(var::z(1), lambda) else {
                    return Ok(Outcome::Vacuous);
                };
                if b == *a {
                    return Ok(Outcome::Vacuous);
                }
                let (Some(x), Some(y)) = (c.evaluate(a)?, c.evaluate(&b)?) else {
                    return Ok(Outcome::Undecided);
                };
                Ok(if y <= x {
                    Outcome::Checked
                } else {
                    Outcome::Failed(format!("specialized level {y} > generic {x} at z1 = {lambda} for {a}"))
                })
            })
        })
        .collect();
    collect(&c.name, "c6", c.params, out)
}

/// The local-symbol laws tested on sampled data with the coefficient field `σ_0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum SymbolLaw {
    /// `(a, fg) = (a, f) + (a, g)`.
    LS1,
    /// `(a, f) = v(f) a(0)` for integral `a`.
    LS2,
    /// `(a, u) = 0` for `u ∈ U^{(r)}`, `r` the non-log level of `a`.
    LS3,
    /// `(a + b, f) = (a, f) + (b, f)`.
    LS5,
}

fn symbol(a: &WittVec<LaurentElem>, f: &LaurentElem) -> Result<WittVec<RatFunc>> {
    local_symbol(a, f, CoeffField::Sigma0)
}

fn law_outcome(law: SymbolLaw, s: &mut Sampler) -> Result<Outcome> {
    let (lhs, rhs, what) = match law {
        SymbolLaw::LS1 => {
            let a = s.element();
            let (f, g) = (s.function(), s.function());
            (symbol(&a, &f.mul(&g))?, symbol(&a, &f)?.add(&symbol(&a, &g)?), format!("a = {a}, f = {f}, g = {g}"))
        }
        SymbolLaw::LS2 => {
            let a = s.witt_integral();
            let f = s.function();
            let v = f.valuation().unwrap_or(0);
            let at_zero = a.map(|c| c.coeff(0)).mul_int(v);
            (symbol(&a, &f)?, at_zero, format!("a = {a}, f = {f}"))
        }
        SymbolLaw::LS3 => {
            let a = s.element();
            let r = matsuda_level(&a).value.max(1) as i64;
            let u = s.unit(r);
            let zero = WittVec::zero(a.p(), a.len(), &RatFunc::zero(a.p()));
            (symbol(&a, &u)?, zero, format!("a = {a}, u = {u}"))
        }
        SymbolLaw::LS5 => {
            let (a, b) = (s.element(), s.element());
            let f = s.function();
            (symbol(&a.add(&b), &f)?, symbol(&a, &f)?.add(&symbol(&b, &f)?), format!("a = {a}, b = {b}, f = {f}"))
        }
    };
    Ok(if lhs == rhs { Outcome::Checked } else { Outcome::Failed(format!("{what}: {lhs} != {rhs}")) })
}

/// One report per law; sample `i` of a law is drawn from the seed `seed + i`.
pub const ALL_LAWS: [SymbolLaw; 4] = [SymbolLaw::LS1, SymbolLaw::LS2, SymbolLaw::LS3, SymbolLaw::LS5];

pub fn check_ls(laws: &[SymbolLaw], params: SampleParams, seed: u64, count: usize) -> Vec<CheckReport> {
    laws.iter()
        .map(|&law| {
            let out = (0..count)
                .into_par_iter()
                .map(|i| {
                    let mut s = Sampler::new(params, seed.wrapping_add(i as u64));
                    settle(|| law_outcome(law, &mut s))
                })
                .collect();
            collect("symbol", &format!("{law:?}"), params, out)
        })
        .collect()
}

/// All checks for one conductor and parameter set.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AxiomReport {
    pub conductor: String,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CheckReport::CSV_HEADER);
        out.push('\n');
        for c in &self.checks {
            out.push_str(&c.csv_row());
            out.push('\n');
        }
        out
    }
}

/// (c1) on `count` samples, (c2) on `count` pairs and, when `m ≥ 1`, the
/// specialization check.
pub fn run_axioms(c: &ConductorUnderTest, seed: u64, count: usize) -> AxiomReport {
    let samples = c.sample(seed, 3 * count);
    let (single, rest) = samples.split_at(count);
    let pairs: Vec<(Element, Element)> = rest.chunks(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    let mut checks = vec![check_c1(c, single), check_c2(c, &pairs)];
    if c.params.m >= 1 {
        checks.push(check_c6(c, single));
    }
    AxiomReport { conductor: c.name.clone(), seed, checks }
}
