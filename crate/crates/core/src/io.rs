//! JSON forms of jets, vector jets and projective frames.
//!
//! Rationals are written as strings `"p/q"` (or `"p"`); on input plain JSON
//! integers are accepted too. Order-two and order-three components are
//! written as full nested arrays with the upper index first, so `e2[mu][a][b]`
//! is the stored coefficient of `u^a u^b` in component `mu`.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::jet::{Jet2, Jet3, Matrix};
use crate::lie::VecJet;
use crate::projective::{ProjFrame2, ProjFrame3};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::symtensor::SymTensor;

/// A jet of either order, as read from JSON.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyJet {
    Order2(Jet2),
    Order3(Jet3),
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn rational_from(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!("expected a rational string, found {other}"))),
    }
}

pub fn rational_to(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| malformed(format!("missing field {key:?}")))
}

fn object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| malformed("expected a JSON object"))
}

fn array(v: &Value, len: usize, what: &str) -> Result<Vec<Value>> {
    let a = v.as_array().ok_or_else(|| malformed(format!("{what} must be an array")))?;
    if a.len() != len {
        return Err(Error::DimensionMismatch { expected: len, found: a.len() });
    }
    Ok(a.clone())
}

fn vector(v: &Value, n: usize, what: &str) -> Result<Vec<Rational>> {
    array(v, n, what)?.iter().map(rational_from).collect()
}

fn matrix(v: &Value, n: usize, what: &str) -> Result<Matrix<Rational>> {
    array(v, n, what)?.iter().map(|row| vector(row, n, what)).collect()
}

/// Reads a full nested array of depth `rank + 1` and checks that it is
/// symmetric in the lower indices.
fn tensor(v: &Value, n: usize, rank: usize, what: &str) -> Result<SymTensor<Rational>> {
    fn walk(v: &Value, n: usize, depth: usize, prefix: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Rational)>, what: &str) -> Result<()> {
        if depth == 0 {
            out.push((prefix.clone(), rational_from(v)?));
            return Ok(());
        }
        for (i, item) in array(v, n, what)?.iter().enumerate() {
            prefix.push(i);
            walk(item, n, depth - 1, prefix, out, what)?;
            prefix.pop();
        }
        Ok(())
    }
    let mut entries = Vec::new();
    walk(v, n, rank + 1, &mut Vec::new(), &mut entries, what)?;
    let mut t = SymTensor::zeros(n, rank);
    for (idx, _) in entries.iter().filter(|(idx, _)| idx[1..].windows(2).all(|w| w[0] <= w[1])) {
        let value = &entries.iter().find(|(j, _)| j == idx).expect("present").1;
        t.set(idx[0], &idx[1..], value.clone());
    }
    for (idx, value) in &entries {
        if t.get(idx[0], &idx[1..]) != value {
            return Err(malformed(format!("{what} is not symmetric in its lower indices")));
        }
    }
    Ok(t)
}

fn tensor_to(t: &SymTensor<Rational>) -> Value {
    fn build(t: &SymTensor<Rational>, prefix: &mut Vec<usize>) -> Value {
        if prefix.len() == t.rank() + 1 {
            return rational_to(t.get(prefix[0], &prefix[1..]));
        }
        Value::Array(
            (0..t.dim())
                .map(|i| {
                    prefix.push(i);
                    let v = build(t, prefix);
                    prefix.pop();
                    v
                })
                .collect(),
        )
    }
    build(t, &mut Vec::new())
}

fn matrix_to(m: &Matrix<Rational>) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(rational_to).collect())).collect())
}

fn vector_to(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to).collect())
}

pub fn jet_from(v: &Value) -> Result<AnyJet> {
    let obj = object(v)?;
    let n = field(obj, "dim")?.as_u64().ok_or_else(|| malformed("dim must be a positive integer"))? as usize;
    if n == 0 {
        return Err(malformed("dim must be a positive integer"));
    }
    let order = field(obj, "order")?.as_u64().ok_or_else(|| malformed("order must be 2 or 3"))?;
    let base = vector(field(obj, "base")?, n, "base")?;
    let e1 = matrix(field(obj, "e1")?, n, "e1")?;
    let e2 = tensor(field(obj, "e2")?, n, 2, "e2")?;
    let jet2 = Jet2::new(base, e1, e2)?;
    match order {
        2 => Ok(AnyJet::Order2(jet2)),
        3 => {
            let e3 = tensor(field(obj, "e3")?, n, 3, "e3")?;
            Ok(AnyJet::Order3(Jet3 { jet2, e3 }))
        }
        _ => Err(malformed("order must be 2 or 3")),
    }
}

pub fn jet2_to(j: &Jet2) -> Value {
    json!({
        "dim": j.dim(),
        "order": 2,
        "base": vector_to(&j.base),
        "e1": matrix_to(&j.e1),
        "e2": tensor_to(&j.e2),
    })
}

pub fn jet3_to(j: &Jet3) -> Value {
    let mut v = jet2_to(&j.jet2);
    v["order"] = json!(3);
    v["e3"] = tensor_to(&j.e3);
    v
}

pub fn any_jet_to(j: &AnyJet) -> Value {
    match j {
        AnyJet::Order2(j) => jet2_to(j),
        AnyJet::Order3(j) => jet3_to(j),
    }
}

pub fn vecjet_from(v: &Value) -> Result<VecJet<Rational>> {
    let obj = object(v)?;
    let m1 = field(obj, "Xm1")?.as_array().ok_or_else(|| malformed("Xm1 must be an array"))?;
    let n = m1.len();
    VecJet::new(
        vector(field(obj, "Xm1")?, n, "Xm1")?,
        matrix(field(obj, "X0")?, n, "X0")?,
        tensor(field(obj, "X1")?, n, 2, "X1")?,
    )
}

pub fn vecjet_to(x: &VecJet<Rational>) -> Value {
    json!({ "Xm1": vector_to(&x.m1), "X0": matrix_to(&x.c0), "X1": tensor_to(&x.c1) })
}

pub fn frame2_from(v: &Value) -> Result<ProjFrame2> {
    let obj = object(v)?;
    let get = |k: &str| field(obj, k).and_then(rational_from);
    ProjFrame2::new(get("x")?, get("e")?, get("e2")?)
}

pub fn frame2_to(f: &ProjFrame2) -> Value {
    json!({ "x": rational_to(&f.x), "e": rational_to(&f.e), "e2": rational_to(&f.e2) })
}

pub fn frame3_to(f: &ProjFrame3) -> Value {
    json!({ "x": rational_to(&f.x), "e": rational_to(&f.e), "e2": rational_to(&f.e2), "e3": rational_to(&f.e3) })
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn jet_round_trip() {
        let mut e2 = SymTensor::zeros(2, 2);
        e2.set(0, &[0, 1], rat(3, 4));
        e2.set(1, &[1, 1], rat(-1, 1));
        let j = Jet2::new(vec![rat(1, 2), rat(0, 1)], vec![vec![rat(1, 1), rat(2, 1)], vec![rat(0, 1), rat(5, 3)]], e2).unwrap();
        let v = jet2_to(&j);
        assert_eq!(v["e2"][0][1][0], json!("3/4"));
        assert_eq!(jet_from(&v).unwrap(), AnyJet::Order2(j));
    }

    #[test]
    fn rejects_asymmetric_tensors() {
        let v = json!({"dim": 2, "order": 2, "base": ["0", "0"], "e1": [["1", "0"], ["0", "1"]],
            "e2": [[["0", "1"], ["0", "0"]], [["0", "0"], ["0", "0"]]]});
        assert!(matches!(jet_from(&v), Err(Error::Malformed(_))));
    }

    #[test]
    fn scalar_jets_and_frames() {
        let v = json!({"dim": 1, "order": 2, "base": [0], "e1": [["2"]], "e2": [[["3"]]]});
        assert_eq!(jet_from(&v).unwrap(), AnyJet::Order2(Jet2::scalar(rat(0, 1), rat(2, 1), rat(3, 1))));
        let f = frame2_from(&json!({"x": "0", "e": "2", "e2": "4"})).unwrap();
        assert_eq!(frame2_to(&f), json!({"x": "0", "e": "2", "e2": "4"}));
        assert!(frame2_from(&json!({"x": "0", "e": "0", "e2": "4"})).is_err());
        let x = VecJet::scalar(rat(1, 1), rat(0, 1), rat(-1, 2));
        assert_eq!(vecjet_from(&vecjet_to(&x)).unwrap(), x);
    }
}
