use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::monomial::PbwMonomial;
use super::preset::VoaKind;
use crate::rational::{fmt_q, parse_q, Q};
use crate::{Error, Result};

/// A finite rational combination of PBW monomials. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VoaElement {
    terms: BTreeMap<PbwMonomial, Q>,
}

impl VoaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::monomial(PbwMonomial::vacuum())
    }

    pub fn monomial(m: PbwMonomial) -> Self {
        Self::term(m, Q::one())
    }

    pub fn term(m: PbwMonomial, c: Q) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn from_parts(parts: &[u32]) -> Self {
        Self::monomial(PbwMonomial::new(parts.to_vec()))
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &PbwMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// `Some(weight)` when every term has the same weight; the zero element has none.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(PbwMonomial::weight);
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(PbwMonomial::weight).max()
    }

    /// Splits into homogeneous components keyed by weight.
    pub fn components(&self) -> BTreeMap<u32, VoaElement> {
        let mut out: BTreeMap<u32, VoaElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight()).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    /// Canonical text, e.g. `3/2*L(-2)L(-2)|0> - 1*L(-4)|0>`.
    pub fn to_text(&self, kind: VoaKind) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        // Highest weight first; within a weight, longer monomials first.
        let mut order: Vec<_> = self.terms.iter().collect();
        order.sort_by(|(a, _), (b, _)| {
            (b.weight(), b.parts().len(), b.parts()).cmp(&(a.weight(), a.parts().len(), a.parts()))
        });
        let mut s = String::new();
        for (i, (m, c)) in order.into_iter().enumerate() {
            let body = format!("{}*{}", c.abs(), m.display(kind, "|0>"));
            if i == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }

    /// Parses the canonical text form back. Accepts either mode symbol.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "0" {
            return Ok(Self::zero());
        }
        let bad = |why: &str| Error::Parse(format!("{why} in element {text:?}"));
        let mut out = Self::zero();
        let mut rest = t;
        let mut sign = Q::one();
        if let Some(r) = rest.strip_prefix('-') {
            sign = -Q::one();
            rest = r;
        }
        loop {
            let end = [" + ", " - "]
                .iter()
                .filter_map(|sep| rest.find(sep))
                .min()
                .unwrap_or(rest.len());
            let chunk = &rest[..end];
            let (coef, word) = chunk.split_once('*').ok_or_else(|| bad("missing '*'"))?;
            let coef = parse_q(coef)? * &sign;
            let word = word
                .trim()
                .strip_suffix("|0>")
                .ok_or_else(|| bad("missing |0>"))?;
            let mut parts = Vec::new();
            for piece in word.split(')').filter(|p| !p.is_empty()) {
                let idx = piece
                    .strip_prefix("L(")
                    .or_else(|| piece.strip_prefix("a("))
                    .ok_or_else(|| bad("unknown mode"))?;
                let m: i64 = idx.parse().map_err(|_| bad("bad mode index"))?;
                if m >= 0 {
                    return Err(bad("non-creation mode"));
                }
                parts.push((-m) as u32);
            }
            out.add_term(PbwMonomial::new(parts), coef);
            if end == rest.len() {
                break;
            }
            sign = if &rest[end..end + 3] == " - " { -Q::one() } else { Q::one() };
            rest = &rest[end + 3..];
        }
        Ok(out)
    }
}

impl fmt::Display for VoaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(VoaKind::Virasoro))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    parts: Vec<u32>,
    coeff: String,
}

impl Serialize for VoaElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(m, c)| TermRepr {
                parts: m.parts().to_vec(),
                coeff: fmt_q(c),
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for VoaElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<TermRepr>::deserialize(d)?;
        let mut e = VoaElement::zero();
        for t in v {
            let c = parse_q(&t.coeff).map_err(serde::de::Error::custom)?;
            e.add_term(PbwMonomial::new(t.parts), c);
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn text_round_trip() {
        let mut e = VoaElement::term(PbwMonomial::new(vec![2, 2]), qf(3, 2));
        e.add_term(PbwMonomial::new(vec![4]), q(-1));
        let s = e.to_text(VoaKind::Virasoro);
        assert_eq!(s, "3/2*L(-2)L(-2)|0> - 1*L(-4)|0>");
        assert_eq!(VoaElement::parse(&s).unwrap(), e);
        assert_eq!(VoaElement::parse("0").unwrap(), VoaElement::zero());
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut e = VoaElement::from_parts(&[3]);
        e.add_term(PbwMonomial::new(vec![3]), q(-1));
        assert!(e.is_zero());
        assert_eq!(e.homogeneous_weight(), None);
    }
}
