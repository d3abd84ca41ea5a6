use crate::algebra::{var, LaurentElem, MultiPoly, RatFunc};
use crate::error::{Error, Result};
use crate::witt::WittVec;

use super::{gated, local_symbol_at, CoeffField};

/// A `K`-rational point of `P^1` with coordinate `T`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Place {
    /// `T = λ` with `λ` a polynomial in the `z_i`.
    Finite(MultiPoly),
    Infinity,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReciprocityReport {
    pub symbols: Vec<(Place, WittVec<RatFunc>)>,
    pub total: WittVec<RatFunc>,
}

fn poly_to_laurent(f: &MultiPoly, reversed_deg: Option<u32>) -> LaurentElem {
    let p = f.characteristic();
    let coeffs = f.to_univariate(var::T);
    let terms = coeffs.into_iter().enumerate().map(|(k, c)| {
        let e = match reversed_deg {
            None => k as i64,
            Some(_) => -(k as i64),
        };
        (e, RatFunc::from_poly(c))
    });
    LaurentElem::from_terms(p, terms, None)
}

/// Expansion of a rational function of `T` in the local parameter at `place`
/// (`T - λ`, or `1/T` at infinity), to precision `prec`.
pub fn laurent_at(c: &RatFunc, place: &Place, prec: i64) -> Result<LaurentElem> {
    let (num, den) = local_parts(c, place);
    if den.num_terms() == 1 {
        let (e, d) = den.terms().next().unwrap();
        let inv = LaurentElem::monomial(d.inv()?, -e);
        return Ok(num.mul(&inv).truncate(prec));
    }
    Ok(num.mul(&den.invert(prec - num.valuation().unwrap_or(0))?).truncate(prec))
}

/// Order of vanishing of a nonzero `c` at `place`.
pub fn order_at(c: &RatFunc, place: &Place) -> Result<i64> {
    let (num, den) = local_parts(c, place);
    Ok(num.valuation().ok_or(Error::ZeroInput)? - den.valuation().unwrap())
}

fn local_parts(c: &RatFunc, place: &Place) -> (LaurentElem, LaurentElem) {
    let p = c.characteristic();
    match place {
        Place::Finite(lambda) => {
            let shift = MultiPoly::var(var::T, p).add(lambda);
            let n = c.num().substitute(var::T, &shift);
            let d = c.den().substitute(var::T, &shift);
            (poly_to_laurent(&n, None), poly_to_laurent(&d, None))
        }
        Place::Infinity => (poly_to_laurent(c.num(), Some(0)), poly_to_laurent(c.den(), Some(0))),
    }
}

fn strip_places(f: &MultiPoly, points: &[MultiPoly]) -> Result<()> {
    let p = f.characteristic();
    let mut rest = f.clone();
    for lambda in points {
        let lin = MultiPoly::var(var::T, p).sub(lambda);
        while rest.contains_var(var::T) {
            match rest.div_exact(&lin) {
                Some(q) => rest = q,
                None => break,
            }
        }
    }
    if rest.contains_var(var::T) {
        return Err(Error::NonRationalPlace(format!("factor {rest} has no zero among the given points")));
    }
    Ok(())
}

/// Sum over all places of `P^1` of `(a, f)`, for `a` with components in
/// `K(T)` and `f ∈ K(T)^×`, whose poles and zeros lie in `points ∪ {∞}`.
pub fn reciprocity_check(a: &WittVec<RatFunc>, f: &RatFunc, points: &[MultiPoly]) -> Result<ReciprocityReport> {
    let p = a.p();
    let n = a.len();
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    for c in a.comps() {
        strip_places(c.den(), points)?;
    }
    strip_places(f.num(), points)?;
    strip_places(f.den(), points)?;
    let mut places: Vec<Place> = points.iter().cloned().map(Place::Finite).collect();
    places.push(Place::Infinity);
    let mut symbols = Vec::new();
    let mut total = WittVec::zero(p, n, &RatFunc::zero(p));
    for place in places {
        let depth = a
            .comps()
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| order_at(c, &place).map(|v| (-v).max(0)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or(0);
        let start = (p as i64).pow(n as u32 - 1) * depth + 3;
        let value = gated(start, |prec| {
            let a_loc = a.try_map(|c| laurent_at(c, &place, prec))?;
            let v = order_at(f, &place)?;
            let f_loc = laurent_at(f, &place, v + prec + 1)?;
            local_symbol_at(&a_loc, &f_loc, CoeffField::Sigma0, prec)
        })?;
        total = total.add(&value);
        symbols.push((place, value));
    }
    Ok(ReciprocityReport { symbols, total })
}
