//! Multivariate polynomial gcd by recursive primitive remainder sequences.

use super::field::FieldElem;
use super::poly::{Monomial, MultiPoly, VarId};

/// Monic gcd of `a` and `b` (zero only when both are zero).
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let ch = a.characteristic();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(ch);
    }
    if a.is_monomial() || b.is_monomial() {
        let (m, other) = if a.is_monomial() { (a, b) } else { (b, a) };
        let mut g = m.leading_term().unwrap().0.clone();
        for (n, _) in other.terms() {
            g = g.gcd(n);
            if g.is_one() {
                break;
            }
        }
        return MultiPoly::term(g, FieldElem::one(ch));
    }
    if a == b {
        return a.monic();
    }
    let va = a.vars();
    let vb = b.vars();
    let v = *va.union(&vb).max().unwrap();
    if !vb.contains(&v) {
        return gcd(&content(a, v), b);
    }
    if !va.contains(&v) {
        return gcd(a, &content(b, v));
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_gcd(pa.to_univariate(v), pb.to_univariate(v), v);
    let g = MultiPoly::from_univariate(v, &g, ch);
    c.mul(&g).monic()
}

/// Gcd of the coefficients of `a` viewed as a polynomial in `v`.
pub fn content(a: &MultiPoly, v: VarId) -> MultiPoly {
    let coeffs = a.to_univariate(v);
    let mut g = MultiPoly::zero(a.characteristic());
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

type Uni = Vec<MultiPoly>;

fn trim(mut f: Uni) -> Uni {
    while f.len() > 1 && f.last().unwrap().is_zero() {
        f.pop();
    }
    f
}

fn is_zero(f: &Uni) -> bool {
    f.iter().all(MultiPoly::is_zero)
}

fn pseudo_rem(f: &Uni, g: &Uni) -> Uni {
    let mut r = trim(f.clone());
    let g = trim(g.clone());
    let dg = g.len() - 1;
    let lg = g[dg].clone();
    while !is_zero(&r) && r.len() - 1 >= dg {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dg;
        let mut next: Uni = r.iter().map(|c| c.mul(&lg)).collect();
        for (k, c) in g.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&c.mul(&lr));
        }
        next.pop();
        r = trim(next);
    }
    r
}

fn primitive_part(f: &Uni) -> Uni {
    let ch = f[0].characteristic();
    let mut g = MultiPoly::zero(ch);
    for c in f.iter().filter(|c| !c.is_zero()) {
        g = gcd(&g, c);
        if g.is_one() {
            return f.clone();
        }
    }
    f.iter().map(|c| c.div_exact(&g).expect("content divides")).collect()
}

fn primitive_gcd(f: Uni, g: Uni, _v: VarId) -> Uni {
    let (mut f, mut g) = (trim(f), trim(g));
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = pseudo_rem(&f, &g);
        if is_zero(&r) {
            return primitive_part(&g);
        }
        if r.len() == 1 {
            let ch = r[0].characteristic();
            return vec![MultiPoly::one(ch)];
        }
        f = g;
        g = primitive_part(&r);
    }
}

/// Monomial with the smallest exponent of each variable over all terms.
pub fn monomial_content(a: &MultiPoly) -> Monomial {
    let mut it = a.terms();
    let Some((first, _)) = it.next() else { return Monomial::one() };
    let mut g = first.clone();
    for (m, _) in it {
        g = g.gcd(m);
    }
    g
}
