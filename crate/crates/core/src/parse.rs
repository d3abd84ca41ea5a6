//! Text syntax for elements.
//!
//! Scalars are Laurent polynomials in `t` over `F_p(z_1, …)` or `Q(z_1, …)`,
//! built from integers, `z1, z2, …` (`z` is `z1`), `x`, `t`, `+ - * / ^` and
//! parentheses; `O(t^k)` adds a precision bound. Witt vectors are written
//! `W[a0; a1; …]`, `teich(a)`, `V(w)` and `F(w)`. Forms use `d(·)`, `dlog(·)`
//! and `^` for the wedge product: `a ^ b` is a power when `b` is an integer
//! literal and a wedge otherwise.

use std::fmt;

use crate::algebra::{var, Char, LaurentElem, RatFunc};
use crate::char0::{dlog, DiffForm};
use crate::error::{Error, Result};
use crate::witt::WittVec;

/// Characteristic (`0` for `Q`), Witt length, optional bound on the
/// `z`-variables and the precision used by `dlog` of non-monomials.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ParseContext {
    pub p: Char,
    pub n: usize,
    pub m: Option<usize>,
    pub prec: i64,
}

impl ParseContext {
    pub fn new(p: Char, n: usize) -> Self {
        ParseContext { p, n, m: None, prec: 16 }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Value {
    Scalar(LaurentElem),
    Witt(WittVec<LaurentElem>),
    Form(DiffForm),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(a) => write!(f, "{a}"),
            Value::Witt(a) => write!(f, "{a}"),
            Value::Form(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v = s.parse().map_err(|_| parse_err(col, "integer literal out of range"))?;
            out.push((Tok::Int(v), col));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()[];".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(parse_err(col, &format!("unexpected character '{c}'")));
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

fn parse_err(column: usize, message: &str) -> Error {
    Error::Parse { column, message: message.into() }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ctx: &'a ParseContext,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == &Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(parse_err(self.col(), &format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                neg(&self.term()?)
            }
            Tok::Sym('+') => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            let col = self.col();
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    let b = self.term()?;
                    acc = add(&acc, &b).map_err(|e| at(col, e))?;
                }
                Tok::Sym('-') => {
                    self.bump();
                    let b = self.term()?;
                    acc = add(&acc, &neg(&b)).map_err(|e| at(col, e))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.power()?;
        loop {
            let col = self.col();
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    let b = self.power()?;
                    acc = mul(&acc, &b).map_err(|e| at(col, e))?;
                }
                Tok::Sym('/') => {
                    self.bump();
                    let b = self.power()?;
                    acc = div(&acc, &b).map_err(|e| at(col, e))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn exponent(&mut self) -> Option<i64> {
        match (self.peek().clone(), self.toks.get(self.pos + 1).map(|t| &t.0)) {
            (Tok::Int(k), _) => {
                self.bump();
                Some(k)
            }
            (Tok::Sym(s @ ('-' | '+')), Some(Tok::Int(k))) => {
                let k = if s == '-' { -k } else { *k };
                self.bump();
                self.bump();
                Some(k)
            }
            _ => None,
        }
    }

    fn power(&mut self) -> Result<Value> {
        let mut acc = self.atom()?;
        while self.peek() == &Tok::Sym('^') {
            let col = self.col();
            self.bump();
            if let Some(k) = self.exponent() {
                acc = pow(&acc, k).map_err(|e| at(col, e))?;
                continue;
            }
            if matches!(self.peek(), Tok::End | Tok::Sym('-' | '+' | ')' | ']' | ';' | '*' | '/' | '^')) {
                return Err(parse_err(col, "expected an exponent or a form after '^'"));
            }
            let b = self.atom()?;
            acc = wedge(&acc, &b).map_err(|e| at(col, e))?;
        }
        Ok(acc)
    }

    fn call(&mut self) -> Result<Value> {
        self.expect('(')?;
        let v = self.expr()?;
        self.expect(')')?;
        Ok(v)
    }

    fn atom(&mut self) -> Result<Value> {
        let ch = self.ctx.p;
        let (tok, col) = self.bump();
        match tok {
            Tok::Int(k) => Ok(Value::Scalar(LaurentElem::constant(RatFunc::from_i64(k, ch)))),
            Tok::Sym('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::Ident(name) => self.ident(&name, col),
            Tok::End => Err(parse_err(col, "unexpected end of input")),
            Tok::Sym(c) => Err(parse_err(col, &format!("unexpected '{c}'"))),
        }
    }

    fn ident(&mut self, name: &str, col: usize) -> Result<Value> {
        let ctx = *self.ctx;
        let ch = ctx.p;
        let scalar = |r: RatFunc| Ok(Value::Scalar(LaurentElem::constant(r)));
        match name {
            "t" => Ok(Value::Scalar(LaurentElem::t_pow(1, ch))),
            "x" => scalar(RatFunc::var(var::X, ch)),
            "W" => self.witt_literal(col),
            "O" => {
                self.expect('(')?;
                if self.bump().0 != Tok::Ident("t".into()) {
                    return Err(parse_err(col, "expected O(t^k)"));
                }
                self.expect('^')?;
                let k = self.exponent().ok_or_else(|| parse_err(self.col(), "expected an integer exponent"))?;
                self.expect(')')?;
                Ok(Value::Scalar(LaurentElem::big_o(ch, k)))
            }
            "teich" | "V" | "F" | "d" | "dlog" => {
                let v = self.call()?;
                apply(name, v, &ctx).map_err(|e| at(col, e))
            }
            _ => {
                let idx = match name.strip_prefix('z') {
                    Some("") => Some(1),
                    Some(d) => d.parse::<usize>().ok().filter(|i| (1..1000).contains(i)),
                    None => None,
                };
                let Some(i) = idx else {
                    return Err(parse_err(col, &format!("unknown identifier '{name}'")));
                };
                if ctx.m.is_some_and(|m| i > m) {
                    return Err(parse_err(col, &format!("z{i} exceeds the {} declared variables", ctx.m.unwrap())));
                }
                scalar(RatFunc::var(var::z(i), ch))
            }
        }
    }

    fn witt_literal(&mut self, col: usize) -> Result<Value> {
        let ctx = self.ctx;
        if ctx.p == 0 {
            return Err(parse_err(col, "Witt vectors need a positive characteristic"));
        }
        self.expect('[')?;
        let mut comps = Vec::new();
        loop {
            let c = self.col();
            match self.expr()? {
                Value::Scalar(s) => comps.push(s),
                _ => return Err(parse_err(c, "Witt components must be scalars")),
            }
            match self.bump() {
                (Tok::Sym(';'), _) => continue,
                (Tok::Sym(']'), _) => break,
                (_, c) => return Err(parse_err(c, "expected ';' or ']'")),
            }
        }
        if comps.len() != ctx.n {
            return Err(Error::Arity { expected: ctx.n, found: comps.len() });
        }
        Ok(Value::Witt(WittVec::new(ctx.p, comps)))
    }
}

/// Attaches a column to an arithmetic error.
fn at(column: usize, e: Error) -> Error {
    match e {
        Error::Parse { .. } | Error::Arity { .. } => e,
        e => Error::Parse { column, message: e.to_string() },
    }
}

fn mismatch(what: &str) -> Error {
    Error::Invalid(format!("cannot {what}"))
}

fn neg(a: &Value) -> Value {
    match a {
        Value::Scalar(s) => Value::Scalar(s.neg()),
        Value::Witt(w) => Value::Witt(w.neg()),
        Value::Form(f) => Value::Form(f.neg()),
    }
}

fn as_form(a: &Value) -> Option<DiffForm> {
    match a {
        Value::Scalar(s) => Some(DiffForm::function(s.clone())),
        Value::Form(f) => Some(f.clone()),
        Value::Witt(_) => None,
    }
}

/// The integer `k` when `s` is the constant `k`.
fn as_int(s: &LaurentElem) -> Option<i64> {
    if s.is_zero() {
        return Some(0);
    }
    if !s.is_exact() || s.num_terms() != 1 || s.valuation() != Some(0) {
        return None;
    }
    let c = s.coeff(0).constant_value()?.as_integer()?;
    i64::try_from(c).ok()
}

fn add(a: &Value, b: &Value) -> Result<Value> {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x.add(y))),
        (Value::Witt(x), Value::Witt(y)) => x.try_add(y).map(Value::Witt),
        (Value::Witt(_), _) | (_, Value::Witt(_)) => Err(mismatch("add a Witt vector and a non-Witt value")),
        _ => {
            let (x, y) = (as_form(a).unwrap(), as_form(b).unwrap());
            x.add(&y).map(Value::Form)
        }
    }
}

fn mul(a: &Value, b: &Value) -> Result<Value> {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x.mul(y))),
        (Value::Witt(x), Value::Witt(y)) => x.try_mul(y).map(Value::Witt),
        (Value::Scalar(k), Value::Witt(w)) | (Value::Witt(w), Value::Scalar(k)) => match as_int(k) {
            Some(k) => Ok(Value::Witt(w.mul_int(k))),
            None => Err(mismatch("multiply a Witt vector by a non-integer scalar; use teich()")),
        },
        (Value::Scalar(s), Value::Form(f)) | (Value::Form(f), Value::Scalar(s)) => Ok(Value::Form(f.scale(s))),
        (Value::Form(_), Value::Form(_)) => Err(mismatch("multiply two forms; use '^'")),
        _ => Err(mismatch("multiply a Witt vector and a form")),
    }
}

/// `1/s` for a monomial `c t^k`.
fn invert_monomial(s: &LaurentElem) -> Result<LaurentElem> {
    if s.is_known_zero() {
        return Err(Error::DivisionByZero);
    }
    if !s.is_exact() || s.num_terms() != 1 {
        return Err(Error::Invalid("division by a non-monomial Laurent polynomial".into()));
    }
    s.invert(0)
}

fn div(a: &Value, b: &Value) -> Result<Value> {
    let Value::Scalar(d) = b else {
        return Err(mismatch("divide by a Witt vector or a form"));
    };
    let inv = Value::Scalar(invert_monomial(d)?);
    match a {
        Value::Witt(_) => Err(mismatch("divide a Witt vector")),
        _ => mul(a, &inv),
    }
}

fn pow(a: &Value, k: i64) -> Result<Value> {
    match a {
        Value::Scalar(s) if k >= 0 => Ok(Value::Scalar(s.pow(k as u64))),
        Value::Scalar(s) => Ok(Value::Scalar(invert_monomial(s)?.pow(k.unsigned_abs()))),
        Value::Witt(w) if k >= 0 => {
            let mut acc = WittVec::one(w.p(), w.len(), &LaurentElem::zero(w.p()));
            for _ in 0..k {
                acc = acc.mul(w);
            }
            Ok(Value::Witt(acc))
        }
        Value::Witt(_) => Err(mismatch("raise a Witt vector to a negative power")),
        Value::Form(_) => Err(mismatch("raise a form to a power")),
    }
}

fn wedge(a: &Value, b: &Value) -> Result<Value> {
    match (as_form(a), as_form(b)) {
        (Some(x), Some(y)) => Ok(Value::Form(x.wedge(&y))),
        _ => Err(mismatch("wedge a Witt vector")),
    }
}

fn apply(name: &str, v: Value, ctx: &ParseContext) -> Result<Value> {
    match (name, v) {
        ("teich", Value::Scalar(s)) if ctx.p > 0 => Ok(Value::Witt(WittVec::teichmuller(ctx.p, ctx.n, s))),
        ("V", Value::Witt(w)) => Ok(Value::Witt(w.v_within(1))),
        ("F", Value::Witt(w)) => Ok(Value::Witt(w.frob())),
        ("F", Value::Scalar(s)) if ctx.p > 0 => Ok(Value::Scalar(s.frob())),
        ("d", Value::Scalar(s)) => Ok(Value::Form(DiffForm::function(s).d())),
        ("d", Value::Form(f)) => Ok(Value::Form(f.d())),
        ("dlog", Value::Scalar(s)) => dlog(&s, ctx.prec).map(Value::Form),
        (name, _) => Err(Error::Invalid(format!("{name}() does not apply to this argument"))),
    }
}

pub fn parse_element(text: &str, ctx: &ParseContext) -> Result<Value> {
    let mut p = Parser { toks: lex(text)?, pos: 0, ctx };
    let v = p.expr()?;
    if p.peek() != &Tok::End {
        return Err(parse_err(p.col(), "unexpected trailing input"));
    }
    Ok(v)
}

/// A Witt vector; a bare scalar `s` is read as `[s]`.
pub fn parse_witt(text: &str, ctx: &ParseContext) -> Result<WittVec<LaurentElem>> {
    match parse_element(text, ctx)? {
        Value::Witt(w) => Ok(w),
        Value::Scalar(s) if ctx.p > 0 => Ok(WittVec::teichmuller(ctx.p, ctx.n, s)),
        _ => Err(Error::Invalid("expected a Witt vector".into())),
    }
}

pub fn parse_laurent(text: &str, ctx: &ParseContext) -> Result<LaurentElem> {
    match parse_element(text, ctx)? {
        Value::Scalar(s) => Ok(s),
        _ => Err(Error::Invalid("expected a Laurent polynomial".into())),
    }
}

/// A form; scalars are read as 0-forms.
pub fn parse_form(text: &str, ctx: &ParseContext) -> Result<DiffForm> {
    match parse_element(text, ctx)? {
        Value::Form(f) => Ok(f),
        Value::Scalar(s) => Ok(DiffForm::function(s)),
        Value::Witt(_) => Err(Error::Invalid("expected a differential form".into())),
    }
}

/// A coefficient in `K` (no `t`).
pub fn parse_ratfunc(text: &str, ctx: &ParseContext) -> Result<RatFunc> {
    let s = parse_laurent(text, ctx)?;
    if s.is_exact() && s.terms().all(|(e, _)| *e == 0) {
        Ok(s.coeff(0))
    } else {
        Err(Error::Invalid("expected a constant in t".into()))
    }
}

/// `Σ_k V^k([w_k])` in the input syntax, e.g. `V(teich(2*z1))`.
pub fn render_v_sum(w: &WittVec<RatFunc>) -> String {
    let mut parts = Vec::new();
    for (k, c) in w.comps().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut s = format!("teich({c})");
        for _ in 0..k {
            s = format!("V({s})");
        }
        parts.push(s);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
