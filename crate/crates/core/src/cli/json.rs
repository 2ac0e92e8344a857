//! JSON encodings of the library's values.
//!
//! Rationals are strings `"a/b"` (integers may also be given as JSON numbers), cyclotomic numbers
//! are `{"conductor": e, "coeffs": [...]}` in the power basis, valuations are integers with
//! `{"zero": true}` for a zero component, and group-ring elements are `{label: coefficient}`.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::arith::cyclo::CycNum;
use crate::arith::lattice::IntLattice;
use crate::arith::rational::{format_rational, parse_rational, q, Rational};
use crate::comm_fitting::{CommRing, IdealFG};
use crate::error::{Error, Result};
use crate::group_algebra::{FiniteGroup, GrMatrix, GroupJson, GroupRingElem, GroupSpec};
use crate::wedderburn::{CentralElem, CentralIdeal, WedderburnData};

pub fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

/// `value[key]`, required.
pub fn field<'a>(value: &'a Value, key: &str) -> Result<&'a Value> {
    value.get(key).ok_or_else(|| schema(format!("missing field `{key}`")))
}

pub fn array<'a>(value: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    value.as_array().ok_or_else(|| schema(format!("`{what}` must be an array")))
}

pub fn rat_to_json(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

pub fn rat_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n.as_i64().map(q).ok_or_else(|| schema(format!("`{n}` is not an integer"))),
        Value::String(s) => parse_rational(s).map_err(|_| schema(format!("`{s}` is not a rational"))),
        other => Err(schema(format!("expected a rational, got {other}"))),
    }
}

pub fn rat_matrix_from_json(v: &Value, what: &str) -> Result<Vec<Vec<Rational>>> {
    array(v, what)?.iter().map(|row| array(row, what)?.iter().map(rat_from_json).collect()).collect()
}

pub fn rat_matrix_to_json(m: &[Vec<Rational>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(rat_to_json).collect())).collect())
}

pub fn cyc_to_json(c: &CycNum) -> Value {
    json!({ "conductor": c.conductor(), "coeffs": c.coeffs().iter().map(rat_to_json).collect::<Vec<_>>() })
}

pub fn cyc_from_json(v: &Value) -> Result<CycNum> {
    let e = field(v, "conductor")?.as_u64().filter(|&e| e >= 1).ok_or_else(|| schema("bad `conductor`"))?;
    let coeffs: Vec<Rational> =
        array(field(v, "coeffs")?, "coeffs")?.iter().map(rat_from_json).collect::<Result<_>>()?;
    Ok(CycNum::new(e, &coeffs))
}

/// Sparse `{label: coefficient}` map; keys come out sorted.
pub fn elem_to_json(x: &GroupRingElem) -> Value {
    Value::Object(x.terms().into_iter().map(|(l, c)| (l, rat_to_json(&c))).collect::<Map<_, _>>())
}

/// Accepts `{label: coefficient}`, a bare label such as `"x^2y"`, or an integer scalar.
pub fn elem_from_json(g: &Arc<FiniteGroup>, v: &Value) -> Result<GroupRingElem> {
    match v {
        Value::Object(m) => {
            let terms: Vec<(String, Rational)> =
                m.iter().map(|(l, c)| Ok((l.clone(), rat_from_json(c)?))).collect::<Result<_>>()?;
            GroupRingElem::from_terms(g, terms.iter().map(|(l, c)| (l.as_str(), c.clone())))
        }
        Value::String(label) => Ok(GroupRingElem::basis(g, g.element(label)?)),
        Value::Number(_) => Ok(GroupRingElem::scalar(g, &rat_from_json(v)?)),
        other => Err(schema(format!("expected a group-ring element, got {other}"))),
    }
}

pub fn gr_matrix_from_json(g: &Arc<FiniteGroup>, v: &Value) -> Result<GrMatrix> {
    array(v, "matrix")?.iter().map(|row| array(row, "matrix")?.iter().map(|x| elem_from_json(g, x)).collect()).collect()
}

pub fn gr_matrix_to_json(m: &GrMatrix) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(elem_to_json).collect())).collect())
}

pub fn central_to_json(data: &WedderburnData, c: &CentralElem) -> Value {
    json!({
        "values": c.values.iter().map(cyc_to_json).collect::<Vec<_>>(),
        "valuations": data.valuations(c),
        "group_ring": elem_to_json(&data.central_element(c)),
    })
}

pub fn ideal_to_json(ideal: &CentralIdeal) -> Value {
    json!(ideal.valuations)
}

pub fn lattice_to_json(l: &IntLattice, p: u64) -> Value {
    let basis = l.basis(p);
    json!({ "rank": basis.len(), "basis": rat_matrix_to_json(&basis) })
}

pub fn comm_ideal_to_json(ideal: &IdealFG) -> Value {
    json!({ "ring": ideal.ring.to_string(), "generator": ideal.normal_form().to_string() })
}

/// `"Z"`, `"Z/m"`, `"Z_(p)"`, or the tagged form `{"ring": "integers_mod", "param": m}`.
pub fn ring_from_json(v: &Value) -> Result<CommRing> {
    let ring = match v {
        Value::String(s) => {
            let s = s.replace(' ', "");
            let num = |t: &str| t.parse::<u64>().map_err(|_| schema(format!("bad ring `{s}`")));
            if s == "Z" || s == "integers" {
                CommRing::Integers
            } else if let Some(m) = s.strip_prefix("Z/") {
                CommRing::IntegersMod(num(m.trim_end_matches('Z'))?)
            } else if let Some(p) = s.strip_prefix("Z_(").and_then(|t| t.strip_suffix(')')) {
                CommRing::LocalizedIntegers(num(p)?)
            } else {
                return Err(schema(format!("unknown ring `{s}`")));
            }
        }
        other => serde_json::from_value(other.clone()).map_err(|e| schema(format!("ring: {e}")))?,
    };
    ring.validate()?;
    Ok(ring)
}

pub fn group_from_json(v: &Value) -> Result<Arc<FiniteGroup>> {
    let j: GroupJson = serde_json::from_value(v.clone()).map_err(|e| schema(format!("group: {e}")))?;
    Ok(Arc::new(FiniteGroup::new(GroupSpec::from_json(&j)?)?))
}
