//! JSON form of elements:
//! `{"system": "q2", "terms": [{"re": [n, d], "im": [n, d], "g": 0, "p": 2, "q": 1, "h": 0}]}`.
//!
//! Numerators and denominators are JSON integers when they fit in `i64` and decimal
//! strings otherwise.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{Element, Monomial};
use crate::dynamics::SystemDescriptor;
use crate::error::{Error, Result};
use crate::scalar::{Coeff, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(b: &BigInt) -> Self {
        i64::try_from(b)
            .map(JsonInt::Small)
            .unwrap_or_else(|_| JsonInt::Big(b.to_string()))
    }
}

impl JsonInt {
    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            JsonInt::Small(x) => Ok(BigInt::from(*x)),
            JsonInt::Big(s) => s
                .parse()
                .map_err(|_| Error::InvalidElement(format!("bad integer `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub re: [JsonInt; 2],
    pub im: [JsonInt; 2],
    pub g: i64,
    pub p: i64,
    pub q: i64,
    pub h: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub system: String,
    pub terms: Vec<TermJson>,
}

fn rational_json(r: &Rational) -> [JsonInt; 2] {
    [r.numer().into(), r.denom().into()]
}

fn rational_from(parts: &[JsonInt; 2]) -> Result<Rational> {
    let den = parts[1].to_bigint()?;
    if den == BigInt::from(0) {
        return Err(Error::InvalidElement("zero denominator".into()));
    }
    Ok(Rational::new(parts[0].to_bigint()?, den))
}

impl From<&Element> for ElementJson {
    fn from(e: &Element) -> Self {
        ElementJson {
            system: e.system().to_string(),
            terms: e
                .terms()
                .map(|(m, c)| TermJson {
                    re: rational_json(&c.re),
                    im: rational_json(&c.im),
                    g: m.g(),
                    p: m.p(),
                    q: m.q(),
                    h: m.h(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&ElementJson> for Element {
    type Error = Error;

    fn try_from(j: &ElementJson) -> Result<Element> {
        let sys: SystemDescriptor = j.system.parse()?;
        let mut e = Element::zero(sys);
        let mut seen = BTreeSet::new();
        for t in &j.terms {
            sys.check(t.p)?;
            sys.check(t.q)?;
            if !Monomial::is_canonical_tuple(t.p, t.q, t.h) {
                return Err(Error::InvalidElement(format!(
                    "h = {} not in [0, {})",
                    t.h, t.q
                )));
            }
            let m = Monomial::new(t.g, t.p, t.q, t.h);
            if !seen.insert(m) {
                return Err(Error::InvalidElement(format!("duplicate monomial {m}")));
            }
            let c = Coeff::new(rational_from(&t.re)?, rational_from(&t.im)?);
            if c.is_zero() {
                return Err(Error::InvalidElement(format!("zero coefficient on {m}")));
            }
            e.add_term(m, c);
        }
        Ok(e)
    }
}

pub fn element_to_json(e: &Element) -> serde_json::Value {
    serde_json::to_value(ElementJson::from(e)).expect("serialisable")
}

pub fn element_from_json(s: &str) -> Result<Element> {
    let j: ElementJson =
        serde_json::from_str(s).map_err(|e| Error::InvalidElement(e.to_string()))?;
    Element::try_from(&j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thompson;

    #[test]
    fn round_trip() {
        let x = thompson::x1().scale(&Coeff::new(
            Rational::new(3.into(), 7.into()),
            Rational::new((-1).into(), 2.into()),
        ));
        let text = element_to_json(&x).to_string();
        assert_eq!(element_from_json(&text).unwrap(), x);
    }

    #[test]
    fn big_integers_as_strings() {
        let big: BigInt = BigInt::from(10).pow(30);
        let c = Coeff::real(Rational::from_integer(big));
        let e = Element::scalar(SystemDescriptor::Qn, c);
        let text = element_to_json(&e).to_string();
        assert!(text.contains("\"1000000000000000000000000000000\""));
        assert_eq!(element_from_json(&text).unwrap(), e);
    }

    #[test]
    fn rejects_invalid() {
        let bad_h = r#"{"system":"q2","terms":[{"re":[1,1],"im":[0,1],"g":0,"p":2,"q":2,"h":2}]}"#;
        assert!(element_from_json(bad_h).is_err());
        let bad_p = r#"{"system":"q2","terms":[{"re":[1,1],"im":[0,1],"g":0,"p":3,"q":1,"h":0}]}"#;
        assert!(matches!(
            element_from_json(bad_p),
            Err(Error::InvalidSemigroupElement { .. })
        ));
        let dup = r#"{"system":"qn","terms":[
            {"re":[1,1],"im":[0,1],"g":0,"p":3,"q":1,"h":0},
            {"re":[2,1],"im":[0,1],"g":0,"p":3,"q":1,"h":0}]}"#;
        assert!(element_from_json(dup).is_err());
        let zero_den = r#"{"system":"qn","terms":[{"re":[1,0],"im":[0,1],"g":0,"p":3,"q":1,"h":0}]}"#;
        assert!(element_from_json(zero_den).is_err());
        assert!(element_from_json(r#"{"system":"q9x","terms":[]}"#).is_err());
    }
}
