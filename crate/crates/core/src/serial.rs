//! Canonical JSON for symbols, operators, forms, fields and polynomials.
//!
//! Rationals are `"num/den"` strings, exponent vectors are positional arrays
//! of length `n`, and exterior words list 1-based indices in increasing
//! order. Object keys come out sorted, and term lists follow the internal
//! (deterministic) ordering, so equal values serialize to identical bytes.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::midx::MIdx;
use crate::operator::{DiffOp, PForm};
use crate::poly::Poly;
use crate::search::{Generator, InvariantSpace};
use crate::scalar::{format_rat, parse_rat, Rat};
use crate::symbol::{SymKey, Symbol};
use crate::word::Word;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| perr(format!("{what}: expected an object")))
}

fn field<'a>(o: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| perr(format!("{what}: missing field {key:?}")))
}

fn usize_field(o: &Map<String, Value>, key: &str, what: &str) -> Result<usize> {
    field(o, key, what)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| perr(format!("{what}: {key:?} must be a non-negative integer")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(format!("{what}: expected an array")))
}

pub fn rat_to_json(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) if n.is_i64() => Ok(Rat::from_integer(n.as_i64().unwrap().into())),
        _ => Err(perr(format!("expected a rational \"num/den\", got {v}"))),
    }
}

fn midx_to_json(m: &MIdx) -> Value {
    Value::Array(m.as_slice().iter().map(|&e| json!(e)).collect())
}

fn midx_from_json(v: &Value, n: usize, what: &str) -> Result<MIdx> {
    let a = array(v, what)?;
    if a.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a.len() });
    }
    let exps = a
        .iter()
        .map(|e| {
            e.as_u64()
                .filter(|&e| e <= u64::from(u8::MAX))
                .map(|e| e as u8)
                .ok_or_else(|| perr(format!("{what}: exponents must be small non-negative integers")))
        })
        .collect::<Result<Vec<u8>>>()?;
    Ok(MIdx::from_slice(&exps))
}

fn word_to_json(w: &Word) -> Value {
    Value::Array(w.indices().map(|i| json!(i + 1)).collect())
}

fn word_from_json(v: &Value, n: usize, what: &str) -> Result<Word> {
    let ix = array(v, what)?
        .iter()
        .map(|e| match e.as_u64() {
            Some(i) if i >= 1 => Ok(i as usize - 1),
            _ => Err(perr(format!("{what}: wedge indices are 1-based positive integers"))),
        })
        .collect::<Result<Vec<usize>>>()?;
    Word::new(n, &ix).map_err(|e| perr(format!("{what}: {e}")))
}

pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(m, c)| json!({"coef": rat_to_json(c), "exp": midx_to_json(m)}))
            .collect(),
    )
}

pub fn poly_from_json(v: &Value, n: usize) -> Result<Poly> {
    let mut out = Poly::zero(n);
    for t in array(v, "polynomial")? {
        let o = obj(t, "polynomial term")?;
        let m = midx_from_json(field(o, "exp", "polynomial term")?, n, "exp")?;
        out.add_term(m, rat_from_json(field(o, "coef", "polynomial term")?)?);
    }
    Ok(out)
}

pub fn symbol_to_json(s: &Symbol) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .iter()
        .map(|(k, c)| {
            json!({
                "coef": rat_to_json(c),
                "wedge": word_to_json(&k.wedge),
                "x": midx_to_json(&k.x),
                "xi": midx_to_json(&k.xi),
            })
        })
        .collect();
    json!({"n": s.n(), "p": s.p(), "terms": terms})
}

pub fn symbol_from_json(v: &Value) -> Result<Symbol> {
    let o = obj(v, "symbol")?;
    let n = usize_field(o, "n", "symbol")?;
    let p = usize_field(o, "p", "symbol")?;
    let mut terms = Vec::new();
    for t in array(field(o, "terms", "symbol")?, "symbol terms")? {
        let to = obj(t, "symbol term")?;
        let key = SymKey::new(
            midx_from_json(field(to, "x", "symbol term")?, n, "x")?,
            word_from_json(field(to, "wedge", "symbol term")?, n, "wedge")?,
            midx_from_json(field(to, "xi", "symbol term")?, n, "xi")?,
        );
        terms.push((key, rat_from_json(field(to, "coef", "symbol term")?)?));
    }
    Symbol::from_terms(n, p, terms)
}

pub fn diffop_to_json(d: &DiffOp) -> Value {
    let terms: Vec<Value> = d
        .terms()
        .iter()
        .map(|((alpha, w), c)| {
            json!({"alpha": midx_to_json(alpha), "coef": poly_to_json(c), "wedge": word_to_json(w)})
        })
        .collect();
    json!({"n": d.n(), "p": d.p(), "terms": terms})
}

pub fn diffop_from_json(v: &Value) -> Result<DiffOp> {
    let o = obj(v, "operator")?;
    let n = usize_field(o, "n", "operator")?;
    let p = usize_field(o, "p", "operator")?;
    let mut terms = Vec::new();
    for t in array(field(o, "terms", "operator")?, "operator terms")? {
        let to = obj(t, "operator term")?;
        terms.push((
            midx_from_json(field(to, "alpha", "operator term")?, n, "alpha")?,
            word_from_json(field(to, "wedge", "operator term")?, n, "wedge")?,
            poly_from_json(field(to, "coef", "operator term")?, n)?,
        ));
    }
    DiffOp::from_terms(n, p, terms)
}

pub fn pform_to_json(w: &PForm) -> Value {
    let terms: Vec<Value> = w
        .terms()
        .iter()
        .map(|(u, c)| json!({"coef": poly_to_json(c), "wedge": word_to_json(u)}))
        .collect();
    json!({"n": w.n(), "p": w.p(), "terms": terms})
}

pub fn pform_from_json(v: &Value) -> Result<PForm> {
    let o = obj(v, "form")?;
    let n = usize_field(o, "n", "form")?;
    let p = usize_field(o, "p", "form")?;
    let mut terms = Vec::new();
    for t in array(field(o, "terms", "form")?, "form terms")? {
        let to = obj(t, "form term")?;
        terms.push((
            word_from_json(field(to, "wedge", "form term")?, n, "wedge")?,
            poly_from_json(field(to, "coef", "form term")?, n)?,
        ));
    }
    PForm::from_terms(n, p, terms)
}

pub fn field_to_json(x: &VectorField) -> Value {
    json!({"components": x.components().iter().map(poly_to_json).collect::<Vec<_>>(), "n": x.n()})
}

pub fn field_from_json(v: &Value) -> Result<VectorField> {
    let o = obj(v, "vector field")?;
    let n = usize_field(o, "n", "vector field")?;
    let comps = array(field(o, "components", "vector field")?, "components")?;
    if comps.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: comps.len() });
    }
    VectorField::new(comps.iter().map(|c| poly_from_json(c, n)).collect::<Result<_>>()?)
}

pub fn invariant_space_to_json(s: &InvariantSpace) -> Value {
    let generators: Vec<Value> = s
        .generators
        .iter()
        .map(|g| match g {
            Generator::Named { name, verified } => json!({"name": name, "verified": verified}),
            Generator::Table(entries) => json!({
                "table": entries
                    .iter()
                    .map(|e| json!({"coef": rat_to_json(&e.coef), "label": e.label}))
                    .collect::<Vec<_>>()
            }),
        })
        .collect();
    let p = &s.params;
    json!({
        "dimension": s.dimension,
        "generators": generators,
        "named_span": s.named_span,
        "params": {"k": p.k, "l": p.l, "n": p.n, "p": p.p, "q": p.q, "vect": p.vect},
        "status": s.status,
    })
}

/// Canonical text: pretty-printed, sorted keys, trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| perr(format!("invalid JSON: {e}")))
}
