//! JSON form of piecewise-linear sets:
//! `{"dim": n, "cells": [{"ineqs": [{"a": ["p/q", ...], "b": "p/q", "strict": bool}]}]}`.
//! Rationals are written as strings; integers are also accepted as JSON numbers.

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::{Cell, HalfSpace, PlSet};
use crate::rational::{self, Rational};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IneqRepr {
    a: Vec<RatRepr>,
    b: RatRepr,
    strict: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellRepr {
    ineqs: Vec<IneqRepr>,
}

#[derive(Serialize, Deserialize)]
struct PlSetRepr {
    dim: usize,
    cells: Vec<CellRepr>,
}

struct RatRepr(Rational);

impl Serialize for RatRepr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational::format(&self.0))
    }
}

impl<'de> Deserialize<'de> for RatRepr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => {
                rational::parse(&s).map(RatRepr).map_err(de::Error::custom)
            }
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => {
                rational::parse(&n.to_string())
                    .map(RatRepr)
                    .map_err(de::Error::custom)
            }
            other => Err(de::Error::custom(format!(
                "expected an exact rational (string \"p/q\" or integer), got {other}"
            ))),
        }
    }
}

impl Serialize for PlSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PlSetRepr {
            dim: self.dim,
            cells: self
                .cells
                .iter()
                .map(|c| CellRepr {
                    ineqs: c
                        .constraints
                        .iter()
                        .map(|h| IneqRepr {
                            a: h.normal.iter().cloned().map(RatRepr).collect(),
                            b: RatRepr(h.offset.clone()),
                            strict: h.strict,
                        })
                        .collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PlSetRepr::deserialize(d)?;
        let dim = r.dim;
        let cells = r
            .cells
            .into_iter()
            .map(|c| {
                let cs = c
                    .ineqs
                    .into_iter()
                    .map(|i| {
                        HalfSpace::new(i.a.into_iter().map(|x| x.0).collect(), i.b.0, i.strict)
                    })
                    .collect();
                Cell::new(dim, cs).map_err(de::Error::custom)
            })
            .collect::<Result<Vec<_>, _>>()?;
        PlSet::new(dim, cells).map_err(de::Error::custom)
    }
}

pub fn point_to_json(p: &[Rational]) -> serde_json::Value {
    serde_json::Value::Array(
        p.iter()
            .map(|x| serde_json::Value::String(rational::format(x)))
            .collect(),
    )
}

pub fn point_from_json(v: &serde_json::Value) -> crate::Result<Vec<Rational>> {
    let arr = v
        .as_array()
        .ok_or_else(|| crate::Error::Parse(format!("expected a list of rationals, got {v}")))?;
    arr.iter()
        .map(|x| match x {
            serde_json::Value::String(s) => rational::parse(s),
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => {
                rational::parse(&n.to_string())
            }
            other => Err(crate::Error::Parse(format!(
                "expected an exact rational, got {other}"
            ))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let src = r#"{"dim":2,"cells":[{"ineqs":[{"a":["1","1/2"],"b":"-3/4","strict":true},{"a":[0,-1],"b":2,"strict":false}]}]}"#;
        let s: PlSet = serde_json::from_str(src).unwrap();
        let once = serde_json::to_string(&s).unwrap();
        let back: PlSet = serde_json::from_str(&once).unwrap();
        assert_eq!(back, s);
        assert_eq!(serde_json::to_string(&back).unwrap(), once);
    }

    #[test]
    fn rejects_floats_and_bad_arity() {
        let f = r#"{"dim":1,"cells":[{"ineqs":[{"a":[0.5],"b":"1","strict":true}]}]}"#;
        assert!(serde_json::from_str::<PlSet>(f).is_err());
        let a = r#"{"dim":2,"cells":[{"ineqs":[{"a":["1"],"b":"1","strict":true}]}]}"#;
        assert!(serde_json::from_str::<PlSet>(a).is_err());
    }
}
