//! JSON documents shared with the command-line tool.
//!
//! Integers are JSON numbers when they fit in 64 bits and decimal strings
//! otherwise; rationals are always strings `"p"` or `"p/q"`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lattice::{standard, CharCovector, Family, Form};
use crate::linalg::{parse_rational, IntMatrix, Rational};
use crate::surgery::{FramedLink, KnotInPresentation};

pub fn bigint_to_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

pub fn value_to_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(Error::Parse(format!("expected an integer, found {n}")))
            }
        }
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("expected an integer, found '{s}'"))),
        other => Err(Error::Parse(format!("expected an integer, found {other}"))),
    }
}

pub mod serde_bigint {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        bigint_to_value(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        value_to_bigint(&Value::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

pub mod serde_bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        xs.iter().map(bigint_to_value).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
        Vec::<Value>::deserialize(d)?
            .iter()
            .map(value_to_bigint)
            .collect::<Result<_>>()
            .map_err(serde::de::Error::custom)
    }
}

pub mod serde_bigint_pair {
    use super::*;

    pub fn serialize<S: Serializer>(p: &(BigInt, BigInt), s: S) -> std::result::Result<S::Ok, S::Error> {
        [bigint_to_value(&p.0), bigint_to_value(&p.1)].serialize(s)
    }
}

pub mod serde_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &IntMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
        matrix_to_value(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<IntMatrix, D::Error> {
        value_to_matrix(&Value::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

pub fn serialize_covector<S: Serializer>(c: &CharCovector, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde_bigint_vec::serialize(&c.coords, s)
}

pub fn matrix_to_value(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(bigint_to_value).collect())).collect())
}

pub fn value_to_matrix(v: &Value) -> Result<IntMatrix> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of arrays".into()))?;
    let parsed: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("matrix rows must be arrays".into()))?
                .iter()
                .map(value_to_bigint)
                .collect()
        })
        .collect::<Result<_>>()?;
    let cols = parsed.first().map_or(0, Vec::len);
    IntMatrix::from_rows_with_cols(parsed, cols)
}

pub fn value_to_vector(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array of integers".into()))?
        .iter()
        .map(value_to_bigint)
        .collect()
}

pub fn vector_to_value(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(bigint_to_value).collect())
}

pub fn value_to_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(_) => Ok(Rational::from_integer(value_to_bigint(v)?)),
        other => Err(Error::Parse(format!("expected a rational, found {other}"))),
    }
}

/// `{"gram": [[int]]}` or `{"standard": {"family", "rank", "sign"}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard: Option<StandardDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StandardDoc {
    pub family: String,
    #[serde(default)]
    pub rank: Option<usize>,
    #[serde(default = "default_sign")]
    pub sign: i8,
}

fn default_sign() -> i8 {
    -1
}

impl FormDoc {
    pub fn from_form(f: &Form) -> Self {
        FormDoc { gram: Some(matrix_to_value(f.gram())), standard: None }
    }

    pub fn to_form(&self) -> Result<Form> {
        match (&self.gram, &self.standard) {
            (Some(g), None) => Form::new(value_to_matrix(g)?),
            (None, Some(s)) => {
                let family: Family = s.family.parse()?;
                let rank = match (family, s.rank) {
                    (_, Some(k)) => k,
                    (Family::E8, None) => 8,
                    (Family::Hyperbolic, None) => 1,
                    _ => return Err(Error::Parse(format!("standard form '{}' needs a rank", s.family))),
                };
                standard::standard_form(family, rank, s.sign)
            }
            _ => Err(Error::Parse("form document needs exactly one of 'gram' or 'standard'".into())),
        }
    }
}

/// `{"matrix": [[int]], "names": [string]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinkDoc {
    pub matrix: Value,
    #[serde(default)]
    pub names: Vec<String>,
}

impl LinkDoc {
    pub fn to_link(&self) -> Result<FramedLink> {
        FramedLink::new(value_to_matrix(&self.matrix)?, self.names.clone())
    }

    pub fn from_link(l: &FramedLink) -> Self {
        LinkDoc { matrix: matrix_to_value(l.matrix()), names: l.names().to_vec() }
    }
}

/// `{"ell": [int], "framing": int}`, optionally with the ambient `"link"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KnotDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub link: Option<LinkDoc>,
    #[serde(default)]
    pub ell: Vec<Value>,
    pub framing: Value,
}

impl KnotDoc {
    pub fn to_knot(&self, link: Option<&FramedLink>) -> Result<KnotInPresentation> {
        let link = match (link, &self.link) {
            (Some(l), _) => l.clone(),
            (None, Some(d)) => d.to_link()?,
            (None, None) => FramedLink::empty(),
        };
        let ell = self.ell.iter().map(value_to_bigint).collect::<Result<_>>()?;
        KnotInPresentation::new(link, ell, value_to_bigint(&self.framing)?)
    }

    pub fn from_knot(k: &KnotInPresentation) -> Self {
        KnotDoc {
            link: Some(LinkDoc::from_link(&k.link)),
            ell: k.ell.iter().map(bigint_to_value).collect(),
            framing: bigint_to_value(&k.framing),
        }
    }
}
