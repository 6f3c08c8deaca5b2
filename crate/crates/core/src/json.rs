//! JSON wire formats for elements.

use num_rational::BigRational;
use num_traits::FromPrimitive;
use serde::{Deserialize, Serialize};

use crate::component::GradedComponent;
use crate::element::LeavittElement;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Scalar};
use crate::word::Word;

pub const SCHEMA: &str = "leavitt-lp/1";

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ElementJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub d: u32,
    pub components: Vec<ComponentJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ComponentJson {
    pub degree: i64,
    pub level: usize,
    pub entries: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct EntryJson {
    pub row: Vec<u32>,
    pub col: Vec<u32>,
    pub re: Num,
    #[serde(default = "Num::zero")]
    pub im: Num,
}

/// A number on the wire: `"p/q"` strings are exact, bare JSON numbers are
/// accepted on input (floats only where a float is meaningful).
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(untagged)]
pub enum Num {
    Text(String),
    Int(i64),
    Float(f64),
}

impl Num {
    pub fn zero() -> Self {
        Num::Text("0".into())
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Num::Text(format_rational(q))
    }

    pub fn to_rational(&self) -> Result<BigRational> {
        match self {
            Num::Text(s) => parse_rational(s),
            Num::Int(n) => Ok(BigRational::from_integer((*n).into())),
            Num::Float(x) => {
                if x.fract() == 0.0 && x.is_finite() {
                    BigRational::from_f64(*x).ok_or(Error::NonFinite)
                } else {
                    Err(Error::Json(format!("exact value required, got float {x}")))
                }
            }
        }
    }

    pub fn to_f64(&self) -> Result<f64> {
        match self {
            Num::Float(x) => Ok(*x),
            Num::Int(n) => Ok(*n as f64),
            Num::Text(s) => {
                if let Ok(q) = parse_rational(s) {
                    use num_traits::ToPrimitive;
                    return q.to_f64().ok_or(Error::NonFinite);
                }
                s.trim().parse::<f64>().map_err(|_| Error::Json(format!("invalid number {s:?}")))
            }
        }
    }
}

pub(crate) fn scalar_to_json(v: &Scalar) -> (Num, Num) {
    (Num::from_rational(&v.re), Num::from_rational(&v.im))
}

pub(crate) fn scalar_from_json(re: &Num, im: &Num) -> Result<Scalar> {
    Ok(Scalar::new(re.to_rational()?, im.to_rational()?))
}

impl ElementJson {
    pub fn from_element(a: &LeavittElement) -> Self {
        let components = a
            .components()
            .map(|c| ComponentJson {
                degree: c.degree(),
                level: c.level(),
                entries: c
                    .entries()
                    .map(|(row, col, v)| {
                        let (re, im) = scalar_to_json(v);
                        EntryJson { row: row.letters().to_vec(), col: col.letters().to_vec(), re, im }
                    })
                    .collect(),
            })
            .collect();
        ElementJson { schema: Some(SCHEMA.into()), d: a.d(), components }
    }

    /// Validates word lengths and letters, then canonicalizes. Non-minimal
    /// input levels are accepted.
    pub fn to_element(&self) -> Result<LeavittElement> {
        let d = self.d;
        let comps = self
            .components
            .iter()
            .map(|c| {
                let entries = c
                    .entries
                    .iter()
                    .map(|e| {
                        Ok((
                            Word::new(d, e.row.clone())?,
                            Word::new(d, e.col.clone())?,
                            scalar_from_json(&e.re, &e.im)?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                GradedComponent::from_entries(d, c.degree, c.level, entries)
            })
            .collect::<Result<Vec<_>>>()?;
        LeavittElement::from_components(d, comps)
    }
}

pub fn element_to_json(a: &LeavittElement) -> serde_json::Value {
    serde_json::to_value(ElementJson::from_element(a)).expect("element JSON serializes")
}

pub fn element_from_json_str(text: &str) -> Result<LeavittElement> {
    let parsed: ElementJson = serde_json::from_str(text)?;
    parsed.to_element()
}

pub fn element_from_json(value: &serde_json::Value) -> Result<LeavittElement> {
    let parsed: ElementJson = serde_json::from_value(value.clone())?;
    parsed.to_element()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_element;

    #[test]
    fn round_trip() {
        let a = parse_element(3, "(1/2-2i) s12 t3 + 7 s1 - t2 + 1").unwrap();
        let text = serde_json::to_string(&ElementJson::from_element(&a)).unwrap();
        assert_eq!(element_from_json_str(&text).unwrap(), a);
    }

    #[test]
    fn accepts_non_minimal_input() {
        let text = r#"{"d":2,"components":[{"degree":0,"level":1,"entries":[
            {"row":[1],"col":[1],"re":"1","im":"0"},
            {"row":[2],"col":[2],"re":1}]}]}"#;
        assert_eq!(element_from_json_str(text).unwrap(), LeavittElement::one(2));
    }

    #[test]
    fn rejects_bad_entries() {
        let wrong_len = r#"{"d":2,"components":[{"degree":1,"level":0,"entries":[{"row":[1,1],"col":[],"re":"1","im":"0"}]}]}"#;
        assert!(matches!(element_from_json_str(wrong_len), Err(Error::Precondition(_))));
        let bad_letter = r#"{"d":2,"components":[{"degree":1,"level":0,"entries":[{"row":[3],"col":[],"re":"1","im":"0"}]}]}"#;
        assert!(matches!(element_from_json_str(bad_letter), Err(Error::LetterOutOfRange { .. })));
        assert!(matches!(element_from_json_str("{"), Err(Error::Json(_))));
    }

    #[test]
    fn wire_shape() {
        let a = parse_element(2, "3/2 s1").unwrap();
        let v = element_to_json(&a);
        assert_eq!(v["schema"], "leavitt-lp/1");
        assert_eq!(v["components"][0]["degree"], 1);
        assert_eq!(v["components"][0]["entries"][0]["re"], "3/2");
        assert_eq!(v["components"][0]["entries"][0]["row"], serde_json::json!([1]));
    }
}
