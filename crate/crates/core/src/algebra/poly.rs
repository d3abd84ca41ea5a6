//! Sparse multivariate polynomials over `F_p` or `Q`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use smallvec::SmallVec;

use super::field::{Char, FieldElem};

/// Variable identifier. The ordering of ids is the variable priority used by
/// the monomial order: smaller ids rank higher.
pub type VarId = u16;

/// Fixed variable layout: `z1..`, then `x`, then `y1..`, then the global
/// coordinate `T` used for rational functions on the projective line.
pub mod var {
    use super::VarId;

    pub const X: VarId = 1000;
    pub const T: VarId = 2000;

    pub fn z(i: usize) -> VarId {
        assert!((1..1000).contains(&i), "z-index out of range");
        i as VarId
    }

    pub fn y(i: usize) -> VarId {
        assert!((1..1000).contains(&i), "y-index out of range");
        (1000 + i) as VarId
    }

    pub fn is_z(v: VarId) -> bool {
        (1..1000).contains(&v)
    }

    pub fn is_y(v: VarId) -> bool {
        (1001..2000).contains(&v)
    }

    pub fn name(v: VarId) -> String {
        match v {
            X => "x".to_string(),
            T => "T".to_string(),
            v if is_z(v) => format!("z{v}"),
            v if is_y(v) => format!("y{}", v - 1000),
            v => format!("v{v}"),
        }
    }
}

/// Sorted list of `(variable, exponent)` with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub SmallVec<[(VarId, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: VarId, e: u32) -> Self {
        let mut m = Monomial::one();
        if e > 0 {
            m.0.push((v, e));
        }
        m
    }

    pub fn from_pairs(pairs: &[(VarId, u32)]) -> Self {
        let mut acc = Monomial::one();
        for &(v, e) in pairs {
            acc = acc.mul(&Monomial::var(v, e));
        }
        acc
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        for &(v, f) in &o.0 {
            if self.exponent(v) < f {
                return None;
            }
        }
        let mut out = SmallVec::new();
        for &(v, e) in &self.0 {
            let d = e - o.exponent(v);
            if d > 0 {
                out.push((v, d));
            }
        }
        Some(Monomial(out))
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    /// Componentwise minimum (monomial gcd).
    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        for &(v, e) in &self.0 {
            let f = o.exponent(v);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        Monomial(out)
    }

    pub fn without(&self, v: VarId) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(w, _)| *w != v).collect())
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order; smaller variable ids have higher priority.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    ch: Char,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl MultiPoly {
    pub fn zero(ch: Char) -> Self {
        MultiPoly { ch, terms: BTreeMap::new() }
    }

    pub fn one(ch: Char) -> Self {
        Self::constant(FieldElem::one(ch))
    }

    pub fn constant(c: FieldElem) -> Self {
        let ch = c.characteristic();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { ch, terms }
    }

    pub fn from_i64(k: i64, ch: Char) -> Self {
        Self::constant(FieldElem::from_i64(k, ch))
    }

    pub fn var(v: VarId, ch: Char) -> Self {
        Self::term(Monomial::var(v, 1), FieldElem::one(ch))
    }

    pub fn term(m: Monomial, c: FieldElem) -> Self {
        let ch = c.characteristic();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { ch, terms }
    }

    pub fn from_terms(ch: Char, it: impl IntoIterator<Item = (Monomial, FieldElem)>) -> Self {
        let mut p = MultiPoly::zero(ch);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn characteristic(&self) -> Char {
        self.ch
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn constant_value(&self) -> Option<FieldElem> {
        if self.terms.is_empty() {
            return Some(FieldElem::zero(self.ch));
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> FieldElem {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(|| FieldElem::zero(self.ch))
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).cloned().unwrap_or_else(|| FieldElem::zero(self.ch))
    }

    pub fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElem)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> FieldElem {
        self.leading_term().map_or_else(|| FieldElem::zero(self.ch), |(_, c)| c.clone())
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect()
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly { ch: self.ch, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.ch);
        }
        if c.is_one() {
            return self.clone();
        }
        MultiPoly { ch: self.ch, terms: self.terms.iter().map(|(m, d)| (m.clone(), d.mul(c))).collect() }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        self.scale(&FieldElem::from_i64(k, self.ch))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &FieldElem) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.ch);
        }
        MultiPoly { ch: self.ch, terms: self.terms.iter().map(|(n, d)| (n.mul(m), d.mul(c))).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return MultiPoly::zero(self.ch);
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        if let Some(out) = self.mul_dense_fp(o) {
            return out;
        }
        let mut prods: Vec<(Monomial, FieldElem)> = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &o.terms {
                prods.push((m.mul(n), c.mul(d)));
            }
        }
        prods.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Monomial, FieldElem)> = Vec::with_capacity(prods.len());
        for (m, c) in prods {
            match merged.last_mut() {
                Some(last) if last.0 == m => last.1 = last.1.add(&c),
                _ => {
                    if merged.last().is_some_and(|l| l.1.is_zero()) {
                        merged.pop();
                    }
                    merged.push((m, c));
                }
            }
        }
        if merged.last().is_some_and(|l| l.1.is_zero()) {
            merged.pop();
        }
        MultiPoly { ch: self.ch, terms: merged.into_iter().collect() }
    }

    /// Product over `F_p` through Kronecker substitution into a dense
    /// array, when that array is not much larger than the sparse product.
    fn mul_dense_fp(&self, o: &Self) -> Option<Self> {
        let p = self.ch as u64;
        if p == 0 {
            return None;
        }
        let mut deg: BTreeMap<VarId, u64> = BTreeMap::new();
        for poly in [self, o] {
            let mut local: BTreeMap<VarId, u64> = BTreeMap::new();
            for m in poly.terms.keys() {
                for &(v, e) in &m.0 {
                    let d = local.entry(v).or_insert(0);
                    *d = (*d).max(e as u64);
                }
            }
            for (v, d) in local {
                *deg.entry(v).or_insert(0) += d;
            }
        }
        let vars: Vec<VarId> = deg.keys().copied().collect();
        let radix: Vec<u64> = deg.values().map(|d| d + 1).collect();
        let mut size: u64 = 1;
        for r in &radix {
            size = size.checked_mul(*r)?;
        }
        let sparse = (self.terms.len() * o.terms.len()) as u64;
        if size > (1 << 24) || size > 8 * sparse + 64 {
            return None;
        }
        let encode = |m: &Monomial| {
            let (mut idx, mut stride, mut k) = (0u64, 1u64, 0);
            for (i, v) in vars.iter().enumerate() {
                if k < m.0.len() && m.0[k].0 == *v {
                    idx += m.0[k].1 as u64 * stride;
                    k += 1;
                }
                stride *= radix[i];
            }
            idx as usize
        };
        let val = |c: &FieldElem| match c {
            FieldElem::Fp { v, .. } => *v as u64,
            FieldElem::Q(_) => unreachable!("rational coefficient in characteristic p"),
        };
        let a: Vec<(usize, u64)> = self.terms.iter().map(|(m, c)| (encode(m), val(c))).collect();
        let b: Vec<(usize, u64)> = o.terms.iter().map(|(m, c)| (encode(m), val(c))).collect();
        let mut acc = vec![0u64; size as usize];
        if p < (1 << 16) {
            for &(i, x) in &a {
                for &(j, y) in &b {
                    acc[i + j] += x * y;
                }
            }
        } else {
            for &(i, x) in &a {
                for &(j, y) in &b {
                    acc[i + j] = (acc[i + j] + x * y % p) % p;
                }
            }
        }
        let mut terms = BTreeMap::new();
        for (idx, c) in acc.into_iter().enumerate() {
            let c = c % p;
            if c == 0 {
                continue;
            }
            let mut rest = idx as u64;
            let mut m = Monomial::one();
            for (i, v) in vars.iter().enumerate() {
                let e = rest % radix[i];
                rest /= radix[i];
                if e > 0 {
                    m.0.push((*v, e as u32));
                }
            }
            terms.insert(m, FieldElem::Fp { v: c as u32, p: self.ch });
        }
        Some(MultiPoly { ch: self.ch, terms })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        if e == 0 {
            return MultiPoly::one(self.ch);
        }
        if self.is_monomial() {
            let (m, c) = self.terms.iter().next().unwrap();
            return MultiPoly::term(m.pow(e as u32), c.pow(e));
        }
        if self.ch != 0 && e % self.ch as u64 == 0 {
            return self.frob().pow(e / self.ch as u64);
        }
        let mut base = self.clone();
        let mut acc = MultiPoly::one(self.ch);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The `p`-th power in characteristic `p` (additive there).
    pub fn frob(&self) -> Self {
        assert!(self.ch != 0, "frobenius needs positive characteristic");
        let p = self.ch;
        MultiPoly { ch: self.ch, terms: self.terms.iter().map(|(m, c)| (m.pow(p), c.clone())).collect() }
    }

    /// `q` with `q^p = self`, if it exists (characteristic `p` only).
    pub fn pth_root(&self) -> Option<Self> {
        assert!(self.ch != 0, "p-th roots need positive characteristic");
        let p = self.ch;
        let mut out = MultiPoly::zero(self.ch);
        for (m, c) in &self.terms {
            let mut root = SmallVec::new();
            for &(v, e) in &m.0 {
                if e % p != 0 {
                    return None;
                }
                root.push((v, e / p));
            }
            // every element of F_p is its own p-th power
            out.terms.insert(Monomial(root), c.clone());
        }
        Some(out)
    }

    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Coefficients with respect to `v`, indexed by degree in `v`.
    pub fn to_univariate(&self, v: VarId) -> Vec<MultiPoly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![MultiPoly::zero(self.ch); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            out[e].terms.insert(m.without(v), c.clone());
        }
        out
    }

    pub fn from_univariate(v: VarId, coeffs: &[MultiPoly], ch: Char) -> Self {
        let mut out = MultiPoly::zero(ch);
        for (e, c) in coeffs.iter().enumerate() {
            let m = Monomial::var(v, e as u32);
            for (n, d) in &c.terms {
                out.add_term(n.mul(&m), d.clone());
            }
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv().unwrap()));
        }
        if d.is_monomial() {
            let (dm, dc) = d.terms.iter().next().unwrap();
            let inv = dc.inv().unwrap();
            let mut out = MultiPoly::zero(self.ch);
            for (m, c) in &self.terms {
                out.terms.insert(m.div(dm)?, c.mul(&inv));
            }
            return Some(out);
        }
        let (lm, lc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let lc_inv = lc.inv().unwrap();
        let mut rem = self.clone();
        let mut q = MultiPoly::zero(self.ch);
        while let Some((rm, rc)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let m = rm.div(&lm)?;
            let c = rc.mul(&lc_inv);
            rem = rem.sub(&d.mul_monomial(&m, &c));
            q.add_term(m, c);
        }
        Some(q)
    }

    pub fn derivative(&self, v: VarId) -> Self {
        let mut out = MultiPoly::zero(self.ch);
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut n = m.without(v);
            if e > 1 {
                n = n.mul(&Monomial::var(v, e - 1));
            }
            out.add_term(n, c.mul_int(e as i64));
        }
        out
    }

    /// Substitutes `v := s`.
    pub fn substitute(&self, v: VarId, s: &MultiPoly) -> MultiPoly {
        if !self.contains_var(v) {
            return self.clone();
        }
        let coeffs = self.to_univariate(v);
        let mut acc = MultiPoly::zero(self.ch);
        for c in coeffs.iter().rev() {
            acc = acc.mul(s).add(c);
        }
        acc
    }

    /// Coefficientwise map into another characteristic (`F_p` residues lift to integers).
    pub fn change_char(&self, ch: Char) -> Option<MultiPoly> {
        let mut out = MultiPoly::zero(ch);
        for (m, c) in &self.terms {
            let d = match c {
                FieldElem::Fp { v, .. } => FieldElem::from_i64(*v as i64, ch),
                FieldElem::Q(q) => FieldElem::from_rational(q, ch)?,
            };
            out.add_term(m.clone(), d);
        }
        Some(out)
    }

    pub fn map_coeffs(&self, f: impl Fn(&FieldElem) -> FieldElem) -> MultiPoly {
        MultiPoly::from_terms(self.ch, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Renames variables through `f` (which must be injective on the support).
    pub fn rename(&self, f: impl Fn(VarId) -> VarId) -> MultiPoly {
        let mut out = MultiPoly::zero(self.ch);
        for (m, c) in &self.terms {
            let n = Monomial::from_pairs(&m.0.iter().map(|&(v, e)| (f(v), e)).collect::<Vec<_>>());
            out.add_term(n, c.clone());
        }
        out
    }
}

fn fmt_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (k, &(v, e)) in m.0.iter().enumerate() {
        if k > 0 {
            write!(f, "*")?;
        }
        write!(f, "{}", var::name(v))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}
