//! JSON values for reports and their text rendering.

use num_traits::{One, ToPrimitive};
use serde_json::{json, Map, Value};

use gorkit_core::lattice::{Int, Point, Rat};
use gorkit_core::polytope::LatticePolytope;
use gorkit_core::stringy::{LaurentPoly2, UniPoly};

/// A JSON number when it fits in 64 bits, a decimal string otherwise.
pub fn int(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn rat(x: &Rat) -> Value {
    if x.denom().is_one() {
        json!(x.numer().to_string())
    } else {
        json!(format!("{}/{}", x.numer(), x.denom()))
    }
}

pub fn point(p: &[Int]) -> Value {
    Value::Array(p.iter().map(int).collect())
}

pub fn points(ps: &[Point]) -> Value {
    Value::Array(ps.iter().map(|p| point(p)).collect())
}

pub fn rat_point(p: &[Rat]) -> Value {
    Value::Array(p.iter().map(rat).collect())
}

pub fn vertices(p: &LatticePolytope) -> Value {
    points(p.vertices())
}

pub fn parts(ps: &[LatticePolytope]) -> Value {
    Value::Array(ps.iter().map(vertices).collect())
}

pub fn unipoly(p: &UniPoly) -> Value {
    json!({ "unipoly": p.coeffs().iter().map(int).collect::<Vec<_>>() })
}

pub fn laurent(p: &LaurentPoly2) -> Value {
    let terms: Vec<Value> = p.terms().map(|(i, j, c)| json!([i, j, int(c)])).collect();
    json!({ "laurent2": terms })
}

pub fn option<T>(x: Option<T>, f: impl Fn(T) -> Value) -> Value {
    x.map_or(Value::Null, f)
}

fn as_int(v: &Value) -> Option<Int> {
    match v {
        Value::Number(n) => n.as_i64().map(Int::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// Polynomial objects render with their usual notation.
fn poly_text(m: &Map<String, Value>) -> Option<String> {
    if m.len() != 1 {
        return None;
    }
    if let Some(Value::Array(cs)) = m.get("unipoly") {
        let coeffs: Option<Vec<Int>> = cs.iter().map(as_int).collect();
        return Some(UniPoly::new(coeffs?).to_string());
    }
    if let Some(Value::Array(ts)) = m.get("laurent2") {
        let mut p = LaurentPoly2::zero();
        for t in ts {
            let t = t.as_array()?;
            p.add_term(t.first()?.as_i64()?, t.get(1)?.as_i64()?, as_int(t.get(2)?)?);
        }
        return Some(p.to_string());
    }
    None
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(m) => poly_text(m),
        Value::Array(a) => {
            let items: Option<Vec<String>> = a.iter().map(scalar).collect();
            items.map(|i| format!("({})", i.join(", ")))
        }
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) if poly_text(m).is_none() => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) if scalar(v).is_none() => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}[{i}] {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default())),
    }
}

pub fn text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}
