//! JSON encodings of the algebraic types.
//!
//! `RatFunc` is `{num, den}` with both parts rendered in the expression
//! grammar; `LaurentElem` is `{coeffs: {"e": RatFunc}, prec: int | "exact"}`;
//! a Witt vector is `{p, n, comps}`; a form is `{ch, q, terms: [{wedge, coeff}]}`;
//! a canonical form lists its terms with explicit `(s, j)` keys.
//! Scalars carry no characteristic, so they are read back through
//! [`InChar`]; the containers record it themselves.

use std::collections::BTreeMap;

use serde::de::{DeserializeSeed, Deserializer, Error as _};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::{Char, LaurentElem, RatFunc, Ring};
use crate::char0::{DiffForm, Wedge};
use crate::parse::{parse_form, parse_ratfunc, ParseContext};
use crate::witt::{CanonForm, WittVec};

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RatFunc", 2)?;
        st.serialize_field("num", &self.num().to_string())?;
        st.serialize_field("den", &self.den().to_string())?;
        st.end()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Prec {
    Finite(i64),
    Exact(String),
}

impl Serialize for LaurentElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs: BTreeMap<String, &RatFunc> = self.terms().map(|(e, c)| (e.to_string(), c)).collect();
        let prec = match self.prec() {
            Some(q) => Prec::Finite(q),
            None => Prec::Exact("exact".into()),
        };
        let mut st = s.serialize_struct("LaurentElem", 2)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.serialize_field("prec", &prec)?;
        st.end()
    }
}

impl<R: Ring + Serialize> Serialize for WittVec<R> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WittVec", 3)?;
        st.serialize_field("p", &self.p())?;
        st.serialize_field("n", &self.len())?;
        st.serialize_field("comps", self.comps())?;
        st.end()
    }
}

#[derive(Serialize)]
struct FormTerm<'a> {
    wedge: String,
    coeff: &'a LaurentElem,
}

impl Serialize for DiffForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<FormTerm> = self.terms().map(|(w, c)| FormTerm { wedge: w.to_string(), coeff: c }).collect();
        let mut st = s.serialize_struct("DiffForm", 3)?;
        st.serialize_field("ch", &self.characteristic())?;
        st.serialize_field("q", &self.degree())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[derive(Serialize)]
struct CanonTerm<'a> {
    s: usize,
    j: i64,
    coeff: &'a WittVec<RatFunc>,
}

impl Serialize for CanonForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut terms: Vec<CanonTerm> = self.terms_s0.iter().map(|(j, c)| CanonTerm { s: 0, j: *j, coeff: c }).collect();
        terms.extend(self.terms_v.iter().map(|((s, j), c)| CanonTerm { s: *s, j: *j, coeff: c }));
        let mut st = s.serialize_struct("CanonForm", 4)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("terms", &terms)?;
        st.serialize_field("integral_remainder", &self.integral_remainder)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct RawRat {
    num: String,
    den: String,
}

#[derive(Deserialize)]
struct RawLaurent {
    coeffs: BTreeMap<String, RawRat>,
    prec: Prec,
}

fn ctx(ch: Char) -> ParseContext {
    ParseContext::new(ch, 1)
}

fn rat<E: serde::de::Error>(r: &RawRat, ch: Char) -> Result<RatFunc, E> {
    let c = ctx(ch);
    let num = parse_ratfunc(&r.num, &c).map_err(E::custom)?;
    let den = parse_ratfunc(&r.den, &c).map_err(E::custom)?;
    num.div(&den).map_err(E::custom)
}

fn laurent<E: serde::de::Error>(r: &RawLaurent, ch: Char) -> Result<LaurentElem, E> {
    let mut terms = Vec::with_capacity(r.coeffs.len());
    for (e, c) in &r.coeffs {
        let e: i64 = e.parse().map_err(|_| E::custom(format!("bad exponent {e:?}")))?;
        terms.push((e, rat(c, ch)?));
    }
    let prec = match &r.prec {
        Prec::Finite(q) => Some(*q),
        Prec::Exact(s) if s == "exact" => None,
        Prec::Exact(s) => return Err(E::custom(format!("bad precision {s:?}"))),
    };
    Ok(LaurentElem::from_terms(ch, terms, prec))
}

/// Reads a scalar (`RatFunc` or `LaurentElem`) of the given characteristic.
#[derive(Clone, Copy, Debug)]
pub struct InChar(pub Char);

impl<'de> DeserializeSeed<'de> for InChar {
    type Value = LaurentElem;

    fn deserialize<D: Deserializer<'de>>(self, d: D) -> Result<LaurentElem, D::Error> {
        laurent(&RawLaurent::deserialize(d)?, self.0)
    }
}

impl InChar {
    pub fn ratfunc<'de, D: Deserializer<'de>>(self, d: D) -> Result<RatFunc, D::Error> {
        rat(&RawRat::deserialize(d)?, self.0)
    }
}

#[derive(Deserialize)]
struct RawWitt<T> {
    p: u32,
    n: usize,
    comps: Vec<T>,
}

fn check_len<E: serde::de::Error>(n: usize, found: usize) -> Result<(), E> {
    if n != found || n == 0 {
        return Err(E::custom(format!("n = {n} but {found} components")));
    }
    Ok(())
}

impl<'de> Deserialize<'de> for WittVec<LaurentElem> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawWitt::<RawLaurent>::deserialize(d)?;
        check_len(raw.n, raw.comps.len())?;
        let comps = raw.comps.iter().map(|c| laurent(c, raw.p)).collect::<Result<_, _>>()?;
        Ok(WittVec::new(raw.p, comps))
    }
}

impl<'de> Deserialize<'de> for WittVec<RatFunc> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawWitt::<RawRat>::deserialize(d)?;
        check_len(raw.n, raw.comps.len())?;
        let comps = raw.comps.iter().map(|c| rat(c, raw.p)).collect::<Result<_, _>>()?;
        Ok(WittVec::new(raw.p, comps))
    }
}

#[derive(Deserialize)]
struct RawFormTerm {
    wedge: String,
    coeff: RawLaurent,
}

#[derive(Deserialize)]
struct RawForm {
    ch: Char,
    q: usize,
    terms: Vec<RawFormTerm>,
}

fn wedge<E: serde::de::Error>(text: &str, ch: Char) -> Result<Wedge, E> {
    if text == "1" {
        return Ok(Wedge::one());
    }
    let f = parse_form(text, &ctx(ch)).map_err(E::custom)?;
    let mut terms = f.terms();
    match (terms.next(), terms.next()) {
        (Some((w, _)), None) => Ok(w.clone()),
        _ => Err(E::custom(format!("not a basis wedge: {text:?}"))),
    }
}

impl<'de> Deserialize<'de> for DiffForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawForm::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in &raw.terms {
            terms.push((wedge(&t.wedge, raw.ch)?, laurent(&t.coeff, raw.ch)?));
        }
        DiffForm::from_terms(raw.ch, raw.q, terms).map_err(D::Error::custom)
    }
}

#[derive(Deserialize)]
struct RawCanonTerm {
    s: usize,
    j: i64,
    coeff: WittVec<RatFunc>,
}

#[derive(Deserialize)]
struct RawCanon {
    p: u32,
    n: usize,
    terms: Vec<RawCanonTerm>,
    integral_remainder: WittVec<LaurentElem>,
}

impl<'de> Deserialize<'de> for CanonForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawCanon::deserialize(d)?;
        let mut out = CanonForm {
            p: raw.p,
            n: raw.n,
            terms_s0: BTreeMap::new(),
            terms_v: BTreeMap::new(),
            integral_remainder: raw.integral_remainder,
        };
        for t in raw.terms {
            let want = if t.s == 0 { raw.n } else { raw.n.saturating_sub(t.s) };
            if t.coeff.len() != want || t.coeff.p() != raw.p {
                return Err(D::Error::custom(format!("term ({}, {}) has the wrong shape", t.s, t.j)));
            }
            if t.s == 0 {
                out.terms_s0.insert(t.j, t.coeff);
            } else {
                out.terms_v.insert((t.s, t.j), t.coeff);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_witt;
    use crate::witt::canonical_form;

    #[test]
    fn witt_round_trip() {
        let c = ParseContext::new(3, 2);
        let w = parse_witt("W[(z1 + 1)/(z2)*t^-4 + 2*t + O(t^3); z1^2*t^-1]", &c).unwrap();
        let js = serde_json::to_string(&w).unwrap();
        let back: WittVec<LaurentElem> = serde_json::from_str(&js).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn scalar_needs_characteristic() {
        let a = crate::parse::parse_laurent("1/2*z1*t^-1 + O(t^2)", &ParseContext::new(0, 1)).unwrap();
        let js = serde_json::to_value(&a).unwrap();
        assert_eq!(js["prec"], 2);
        let back = InChar(0).deserialize(js).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn form_round_trip() {
        let f = parse_form("1/2*z1*d(z1)^dlog(t)/t + 3*d(z2)^d(z1)*t^-2", &ParseContext::new(0, 1)).unwrap();
        let back: DiffForm = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn canonical_form_round_trip() {
        let c = ParseContext::new(2, 3);
        let w = parse_witt("W[z1*t^-3 + t; t^-2; z2*t^-1]", &c).unwrap();
        let cf = canonical_form(&w).unwrap();
        let js = serde_json::to_value(&cf).unwrap();
        assert!(js["terms"].as_array().unwrap().iter().all(|t| t.get("s").is_some() && t.get("j").is_some()));
        let back: CanonForm = serde_json::from_value(js).unwrap();
        assert_eq!(back, cf);
    }
}
