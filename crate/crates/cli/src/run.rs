use std::fs;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use ramify::algebra::LaurentElem;
use ramify::char0::{cdr_conductor, conn_conductor, irregularity, ConnClass, DiffForm};
use ramify::conductor::{alpha_p_conductor, artin_conductor, kr_conductor, rose_conductor, AswClass};
use ramify::filtration::{log_level, matsuda_level};
use ramify::harness::{check_ls, run_axioms, AxiomReport, ConductorUnderTest, SampleParams, Sampler, ALL_LAWS};
use ramify::parse::{parse_form, parse_laurent, parse_ratfunc, parse_witt, render_v_sum, ParseContext};
use ramify::serial::InChar;
use ramify::symbol::{gated, local_symbol, local_symbol_at, residue_term, CoeffField, OneFormTerm};
use ramify::witt::{canonical_form, WittVec};

use crate::{Cli, Cmd, Global, Kind};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ramify::Error),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad JSON input: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// `1` for computational failures, `2` for bad input.
    pub fn code(&self) -> u8 {
        use ramify::Error as E;
        match self {
            CliError::Core(E::InsufficientPrecision { .. } | E::PrecisionGate | E::UndecidedTriviality) => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub struct Output {
    pub text: String,
    pub code: u8,
}

/// Element parameters shared by single requests and batch entries.
#[derive(Clone, Debug)]
struct Params {
    p: u32,
    n: usize,
    m: Option<usize>,
    prec: Option<i64>,
}

impl Params {
    fn from_global(g: &Global) -> Self {
        Params { p: g.p, n: g.n, m: g.m, prec: g.prec }
    }

    fn ctx(&self, ch: u32) -> ParseContext {
        ParseContext { p: ch, n: self.n, m: self.m, prec: self.prec.unwrap_or(16) }
    }

    fn check(&self) -> Result<()> {
        if self.p < 2 || (2..self.p).take_while(|d| d * d <= self.p).any(|d| self.p % d == 0) {
            return Err(CliError::Usage(format!("--p {} is not a prime", self.p)));
        }
        if self.n == 0 {
            return Err(CliError::Usage("--n must be at least 1".into()));
        }
        Ok(())
    }
}

/// Where an element comes from: an expression or a JSON document.
enum Input<'a> {
    Expr(&'a str),
    Json(Value),
}

fn input<'a>(g: &Global, expr: Option<&'a str>) -> Result<Input<'a>> {
    match (&g.file, expr) {
        (Some(path), None) => Ok(Input::Json(serde_json::from_str(&fs::read_to_string(path)?)?)),
        (None, Some(e)) => Ok(Input::Expr(e)),
        (Some(_), Some(_)) => Err(CliError::Usage("give either an expression or --file, not both".into())),
        (None, None) => Err(CliError::Usage("missing input expression".into())),
    }
}

fn witt_input(ps: &Params, inp: &Input) -> Result<WittVec<LaurentElem>> {
    match inp {
        Input::Expr(e) => {
            ps.check()?;
            Ok(parse_witt(e, &ps.ctx(ps.p))?)
        }
        Input::Json(v) => Ok(serde_json::from_value(v.clone())?),
    }
}

fn laurent_input(ps: &Params, inp: &Input) -> Result<LaurentElem> {
    ps.check()?;
    match inp {
        Input::Expr(e) => Ok(parse_laurent(e, &ps.ctx(ps.p))?),
        Input::Json(v) => Ok(serde::de::DeserializeSeed::deserialize(InChar(ps.p), v.clone())?),
    }
}

fn form_input(ps: &Params, inp: &Input) -> Result<DiffForm> {
    match inp {
        Input::Expr(e) => Ok(parse_form(e, &ps.ctx(0))?),
        Input::Json(v) => Ok(serde_json::from_value(v.clone())?),
    }
}

fn conductor(ps: &Params, kind: Kind, q: Option<usize>, inp: &Input) -> Result<(Value, u8)> {
    let out = match kind {
        Kind::Kr => serde_json::to_value(kr_conductor(&witt_input(ps, inp)?)?)?,
        Kind::Artin => {
            let r = artin_conductor(&AswClass::new(witt_input(ps, inp)?))?;
            let code = if r.interval.is_some() { 1 } else { 0 };
            return Ok((serde_json::to_value(r)?, code));
        }
        Kind::AlphaP => serde_json::to_value(alpha_p_conductor(&laurent_input(ps, inp)?))?,
        Kind::Rose => serde_json::to_value(rose_conductor(&witt_input(ps, inp)?)?)?,
        Kind::Log | Kind::Matsuda => {
            let a = witt_input(ps, inp)?;
            let level = if kind == Kind::Log { log_level(&a) } else { matsuda_level(&a) };
            json!({ "level": level.value, "kind": level.kind, "witness": canonical_form(&a)? })
        }
        Kind::Dr => {
            let a = form_input(ps, inp)?;
            if let Some(q) = q {
                if a.degree() != q && !a.is_zero() {
                    return Err(CliError::Usage(format!("expected a {q}-form, got a {}-form", a.degree())));
                }
            }
            json!({ "value": cdr_conductor(&a)?, "kind": "DR", "q": q.unwrap_or(a.degree()) })
        }
        Kind::Irr => {
            let e = ConnClass::new(form_input(ps, inp)?)?;
            json!({ "value": conn_conductor(&e)?, "irregularity": irregularity(&e)?, "kind": "IRR" })
        }
    };
    Ok((out, 0))
}

fn symbol(ps: &Params, sigma: u8, e: u32, unit: &str, inp: &Input) -> Result<Value> {
    let a = witt_input(ps, inp)?;
    let f = parse_laurent(unit, &Params { p: a.p(), ..ps.clone() }.ctx(a.p()))?;
    let field = match sigma {
        0 => CoeffField::Sigma0,
        1 => CoeffField::Sigma1 { e },
        s => return Err(CliError::Usage(format!("--sigma must be 0 or 1, got {s}"))),
    };
    let value = match ps.prec {
        Some(prec) => gated(prec, |q| local_symbol_at(&a, &f, field, q))?,
        None => local_symbol(&a, &f, field)?,
    };
    Ok(json!({ "sigma": field, "value": value, "rendered": render_v_sum(&value) }))
}

fn pretty(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
            map.iter()
                .map(|(k, x)| match x {
                    Value::String(s) => format!("{k:width$}  {s}"),
                    x => format!("{k:width$}  {x}"),
                })
                .collect::<Vec<_>>()
                .join("\n")
        }
        Value::Array(items) => items.iter().map(pretty).collect::<Vec<_>>().join("\n\n"),
        x => x.to_string(),
    }
}

fn render(g: &Global, v: &Value) -> Result<String> {
    if g.pretty {
        Ok(pretty(v))
    } else {
        Ok(serde_json::to_string_pretty(v)?)
    }
}

#[derive(Deserialize)]
struct BatchRequest {
    command: String,
    kind: Option<Kind>,
    p: Option<u32>,
    n: Option<usize>,
    m: Option<usize>,
    q: Option<usize>,
    expr: String,
    unit: Option<String>,
    sigma: Option<u8>,
    e: Option<u32>,
}

fn batch_entry(base: &Params, r: &BatchRequest) -> Result<(Value, u8)> {
    let ps = Params { p: r.p.unwrap_or(base.p), n: r.n.unwrap_or(base.n), m: r.m.or(base.m), prec: base.prec };
    let inp = Input::Expr(&r.expr);
    match r.command.as_str() {
        "conductor" => {
            let kind = r.kind.ok_or_else(|| CliError::Usage("conductor request without kind".into()))?;
            conductor(&ps, kind, r.q, &inp)
        }
        "symbol" => {
            let unit = r.unit.as_deref().ok_or_else(|| CliError::Usage("symbol request without unit".into()))?;
            Ok((symbol(&ps, r.sigma.unwrap_or(0), r.e.unwrap_or(0), unit, &inp)?, 0))
        }
        "canonical-form" => Ok((serde_json::to_value(canonical_form(&witt_input(&ps, &inp)?)?)?, 0)),
        c => Err(CliError::Usage(format!("unknown batch command {c:?}"))),
    }
}

/// Conductors of sampled elements, one row per element.
fn sampled_table(ps: &Params, seed: u64, count: usize, depth: i64) -> Result<(Value, u8)> {
    ps.check()?;
    let params = SampleParams { p: ps.p, n: ps.n, m: ps.m.unwrap_or(1), depth };
    let mut s = Sampler::new(params, seed);
    let elems: Vec<WittVec<LaurentElem>> = (0..count).map(|_| s.element()).collect();
    let rows: Vec<(Value, bool)> = elems
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            let row = || -> ramify::Result<Value> {
                let kr = kr_conductor(a)?;
                let art = artin_conductor(&AswClass::new(a.clone()))?;
                Ok(json!({
                    "index": i,
                    "element": a.to_string(),
                    "log": log_level(a).value,
                    "matsuda": matsuda_level(a).value,
                    "kr": kr.value,
                    "certified": kr.certificate.is_some(),
                    "artin": art.value,
                    "artin_interval": art.interval,
                }))
            };
            match row() {
                Ok(v) => (v, true),
                Err(e) => (json!({ "index": i, "element": a.to_string(), "error": e.to_string() }), false),
            }
        })
        .collect();
    let ok = rows.iter().all(|r| r.1);
    let out = json!({ "params": params, "seed": seed, "rows": rows.into_iter().map(|r| r.0).collect::<Vec<_>>() });
    Ok((out, if ok { 0 } else { 1 }))
}

pub fn run(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    let ps = Params::from_global(g);
    let (value, code) = match &cli.cmd {
        Cmd::Conductor { kind, q, expr } => conductor(&ps, *kind, *q, &input(g, expr.as_deref())?)?,
        Cmd::Symbol { sigma, e, unit, expr } => (symbol(&ps, *sigma, *e, unit, &input(g, expr.as_deref())?)?, 0),
        Cmd::Residue { r, s, i, j, a, b } => {
            ps.check()?;
            let ctx = ps.ctx(ps.p);
            let term = OneFormTerm { r: *r, a: parse_ratfunc(a, &ctx)?, i: *i, s: *s, b: parse_ratfunc(b, &ctx)?, j: *j };
            let value = residue_term(ps.p, ps.n, &term);
            (json!({ "value": value, "rendered": render_v_sum(&value) }), 0)
        }
        Cmd::CanonicalForm { expr } => {
            let a = witt_input(&ps, &input(g, expr.as_deref())?)?;
            (serde_json::to_value(canonical_form(&a)?)?, 0)
        }
        Cmd::Axioms { conductor, seed, count, depth, csv } => {
            ps.check()?;
            let params = SampleParams { p: ps.p, n: ps.n, m: ps.m.unwrap_or(1), depth: *depth };
            let report = if conductor == "symbols" {
                AxiomReport { conductor: conductor.clone(), seed: *seed, checks: check_ls(&ALL_LAWS, params, *seed, *count) }
            } else {
                let c = ConductorUnderTest::named(conductor, params).map_err(|e| CliError::Usage(e.to_string()))?;
                run_axioms(&c, *seed, *count)
            };
            let code = if report.passed() { 0 } else { 1 };
            if *csv {
                return Ok(Output { text: report.to_csv().trim_end().to_string(), code });
            }
            (serde_json::to_value(&report)?, code)
        }
        Cmd::Batch { seed, count, depth } => match &g.file {
            Some(path) => {
                let reqs: Vec<BatchRequest> = serde_json::from_str(&fs::read_to_string(path)?)?;
                let results: Vec<(Value, u8)> = reqs
                    .par_iter()
                    .enumerate()
                    .map(|(i, r)| match batch_entry(&ps, r) {
                        Ok((v, c)) => (json!({ "index": i, "result": v }), c),
                        Err(e) => (json!({ "index": i, "error": e.to_string() }), e.code().min(1)),
                    })
                    .collect();
                let code = results.iter().map(|r| r.1).max().unwrap_or(0);
                (Value::Array(results.into_iter().map(|r| r.0).collect()), code)
            }
            None => sampled_table(&ps, *seed, *count, *depth)?,
        },
    };
    Ok(Output { text: render(g, &value)?, code })
}
