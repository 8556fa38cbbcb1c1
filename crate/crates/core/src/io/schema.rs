//! JSON encodings of representations, signatures and reports.
//!
//! Scalars are strings (`"-1/5"`, `"(t^2-1)/(t+2)"`, `"a+1"`); matrices are
//! row-major arrays of rows; polynomials are coefficient arrays from the
//! constant term up. Objects are emitted with sorted keys.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::expr::{parse_scalar, scalar_string};
use crate::algebra::{fmt_q, parse_q, FieldDescriptor, Mat, ModulusInterval, NumberField, Poly, Q, Scalar};
use crate::error::{Error, Result};
use crate::families::{PointReport, RigidityReport, RigidityVerdict};
use crate::schur::Partition;
use crate::wd::{
    wd_validate, Filtration, GradedPurity, InertiaGen, PurityReport, PurityVerdict, Signature, SignatureEntry,
    WDRep, WeightSpec,
};

fn perr(loc: &str, msg: impl Into<String>) -> Error {
    Error::parse(loc, msg)
}

fn get<'a>(obj: &'a Value, key: &str, loc: &str) -> Result<&'a Value> {
    obj.as_object()
        .ok_or_else(|| perr(loc, "expected an object"))?
        .get(key)
        .ok_or_else(|| perr(&join(loc, key), "missing field"))
}

fn join(loc: &str, key: &str) -> String {
    if loc.is_empty() {
        key.to_string()
    } else {
        format!("{loc}.{key}")
    }
}

fn as_array<'a>(v: &'a Value, loc: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(loc, "expected an array"))
}

fn as_str<'a>(v: &'a Value, loc: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| perr(loc, "expected a string"))
}

fn as_i64(v: &Value, loc: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| perr(loc, "expected an integer"))
}

fn as_bool(v: &Value, loc: &str) -> Result<bool> {
    v.as_bool().ok_or_else(|| perr(loc, "expected a boolean"))
}

/// Parses JSON text, reporting syntax errors by line and column.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| perr(&format!("line {}, column {}", e.line(), e.column()), e.to_string()))
}

/// Pretty-printed JSON with a trailing newline.
pub fn canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn q_to_json(q: &Q) -> Value {
    Value::String(fmt_q(q))
}

pub fn q_from_json(v: &Value, loc: &str) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s).ok_or_else(|| perr(loc, format!("invalid rational {s:?}"))),
        Value::Number(n) if n.is_i64() => Ok(Q::from_integer(n.as_i64().unwrap().into())),
        _ => Err(perr(loc, "expected a rational string")),
    }
}

pub fn field_to_json(f: &FieldDescriptor) -> Value {
    match f {
        FieldDescriptor::Q => json!({"type": "Q"}),
        FieldDescriptor::Qt => json!({"type": "Qt"}),
        FieldDescriptor::NumberField(k) => json!({
            "type": "NumberField",
            "minpoly": k.minpoly().coeffs().iter().map(q_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn field_from_json(v: &Value, loc: &str) -> Result<FieldDescriptor> {
    let ty = as_str(get(v, "type", loc)?, &join(loc, "type"))?;
    match ty {
        "Q" => Ok(FieldDescriptor::Q),
        "Qt" => Ok(FieldDescriptor::Qt),
        "NumberField" => {
            let mloc = join(loc, "minpoly");
            let coeffs = as_array(get(v, "minpoly", loc)?, &mloc)?
                .iter()
                .enumerate()
                .map(|(i, c)| q_from_json(c, &format!("{mloc}[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let k = NumberField::new(Poly::new(coeffs)).map_err(|e| perr(&mloc, e.to_string()))?;
            Ok(FieldDescriptor::NumberField(Arc::new(k)))
        }
        other => Err(perr(&join(loc, "type"), format!("unknown field type {other:?}"))),
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    Value::String(scalar_string(s))
}

pub fn scalar_from_json(v: &Value, field: &FieldDescriptor, loc: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => parse_scalar(s, field).map_err(|m| perr(loc, m)),
        Value::Number(n) if n.is_i64() => Ok(Scalar::int(n.as_i64().unwrap())),
        _ => Err(perr(loc, "expected a scalar string")),
    }
}

pub fn mat_to_json(m: &Mat) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(scalar_to_json).collect()))
            .collect(),
    )
}

pub fn mat_from_json(v: &Value, field: &FieldDescriptor, loc: &str) -> Result<Mat> {
    let rows = as_array(v, loc)?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let rloc = format!("{loc}[{i}]");
        let entries = as_array(r, &rloc)?;
        if i > 0 && entries.len() != out.first().map_or(0, Vec::len) {
            return Err(perr(&rloc, "rows have different lengths"));
        }
        out.push(
            entries
                .iter()
                .enumerate()
                .map(|(j, e)| scalar_from_json(e, field, &format!("{rloc}[{j}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(Mat::from_rows(out, field.clone()))
}

pub fn poly_to_json(p: &Poly<Scalar>) -> Value {
    Value::Array(p.coeffs().iter().map(scalar_to_json).collect())
}

pub fn poly_from_json(v: &Value, field: &FieldDescriptor, loc: &str) -> Result<Poly<Scalar>> {
    let coeffs = as_array(v, loc)?
        .iter()
        .enumerate()
        .map(|(i, c)| scalar_from_json(c, field, &format!("{loc}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

pub fn rep_to_json(rho: &WDRep) -> Value {
    json!({
        "q": rho.q(),
        "field": field_to_json(rho.field()),
        "phi": mat_to_json(rho.phi()),
        "nilp": mat_to_json(rho.nilp()),
        "inertia": rho.inertia().iter().map(|g| json!({
            "label": g.label,
            "matrix": mat_to_json(&g.matrix),
        })).collect::<Vec<_>>(),
    })
}

/// Decodes a representation without validating it.
pub fn rep_from_json(v: &Value) -> Result<WDRep> {
    let q = get(v, "q", "")?
        .as_u64()
        .ok_or_else(|| perr("q", "expected a positive integer"))?;
    let field = field_from_json(get(v, "field", "")?, "field")?;
    let phi = mat_from_json(get(v, "phi", "")?, &field, "phi")?;
    let nilp = mat_from_json(get(v, "nilp", "")?, &field, "nilp")?;
    let inertia = match v.get("inertia") {
        None | Some(Value::Null) => Vec::new(),
        Some(list) => as_array(list, "inertia")?
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let loc = format!("inertia[{i}]");
                Ok(InertiaGen {
                    label: as_str(get(g, "label", &loc)?, &join(&loc, "label"))?.to_string(),
                    matrix: mat_from_json(get(g, "matrix", &loc)?, &field, &join(&loc, "matrix"))?,
                })
            })
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(WDRep::new(q, field, phi, nilp, inertia))
}

/// Parses and validates a representation from JSON text.
pub fn parse_rep(text: &str) -> Result<WDRep> {
    let rho = rep_from_json(&parse_json(text)?)?;
    wd_validate(&rho).map_err(Error::Validation)?;
    Ok(rho)
}

/// Parse, validate and re-serialize in canonical form.
pub fn canonicalize_rep(text: &str) -> Result<String> {
    Ok(canonical_string(&rep_to_json(&parse_rep(text)?)))
}

pub fn signature_to_json(sig: &Signature) -> Value {
    Value::Array(
        sig.entries()
            .iter()
            .map(|(t, e)| {
                json!({
                    "t": t,
                    "charpoly": poly_to_json(&e.charpoly),
                    "inertia_traces": e.inertia_traces.iter()
                        .map(|(l, s)| (l.clone(), scalar_to_json(s)))
                        .collect::<Map<_, _>>(),
                })
            })
            .collect(),
    )
}

pub fn signature_from_json(v: &Value, field: &FieldDescriptor, loc: &str) -> Result<Signature> {
    let mut sig = Signature::new();
    for (i, e) in as_array(v, loc)?.iter().enumerate() {
        let eloc = format!("{loc}[{i}]");
        let t = as_i64(get(e, "t", &eloc)?, &join(&eloc, "t"))?;
        if t < 1 {
            return Err(perr(&join(&eloc, "t"), "chain length must be positive"));
        }
        let charpoly = poly_from_json(get(e, "charpoly", &eloc)?, field, &join(&eloc, "charpoly"))?;
        let mut inertia_traces = BTreeMap::new();
        if let Some(tr) = e.get("inertia_traces") {
            let tloc = join(&eloc, "inertia_traces");
            let obj = tr.as_object().ok_or_else(|| perr(&tloc, "expected an object"))?;
            for (l, s) in obj {
                inertia_traces.insert(l.clone(), scalar_from_json(s, field, &join(&tloc, l))?);
            }
        }
        sig.insert(t as usize, SignatureEntry { charpoly, inertia_traces });
    }
    Ok(sig)
}

pub fn interval_to_json(iv: &ModulusInterval) -> Value {
    json!({"lo": q_to_json(&iv.lo), "hi": q_to_json(&iv.hi)})
}

pub fn weight_to_json(w: WeightSpec) -> Value {
    match w {
        WeightSpec::Given(w) => json!(w),
        WeightSpec::Infer => json!("infer"),
    }
}

fn weight_from_json(v: &Value, loc: &str) -> Result<WeightSpec> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) if n.is_i64() => Ok(WeightSpec::Given(n.as_i64().unwrap())),
        _ => Err(perr(loc, "expected an integer or \"infer\"")),
    }
}

fn opt_i64(v: Option<i64>) -> Value {
    v.map_or(Value::Null, |w| json!(w))
}

pub fn purity_to_json(r: &PurityReport) -> Value {
    json!({
        "verdict": r.verdict.as_str(),
        "weight": opt_i64(r.weight),
        "graded": r.per_graded.iter().map(|g| json!({
            "k": g.k,
            "dim": g.dim,
            "charpoly": poly_to_json(&g.charpoly),
            "target_weight": opt_i64(g.target_weight),
            "moduli": g.moduli.iter().map(interval_to_json).collect::<Vec<_>>(),
            "pure": g.pure,
        })).collect::<Vec<_>>(),
    })
}

fn opt_i64_from(v: &Value, loc: &str) -> Result<Option<i64>> {
    match v {
        Value::Null => Ok(None),
        other => as_i64(other, loc).map(Some),
    }
}

pub fn purity_from_json(v: &Value, field: &FieldDescriptor, loc: &str) -> Result<PurityReport> {
    let verdict: PurityVerdict = as_str(get(v, "verdict", loc)?, &join(loc, "verdict"))?.parse()?;
    let weight = opt_i64_from(get(v, "weight", loc)?, &join(loc, "weight"))?;
    let mut per_graded = Vec::new();
    if let Some(list) = v.get("graded") {
        let gloc = join(loc, "graded");
        for (i, g) in as_array(list, &gloc)?.iter().enumerate() {
            let l = format!("{gloc}[{i}]");
            let moduli = as_array(get(g, "moduli", &l)?, &join(&l, "moduli"))?
                .iter()
                .enumerate()
                .map(|(j, iv)| {
                    let il = format!("{l}.moduli[{j}]");
                    Ok(ModulusInterval {
                        lo: q_from_json(get(iv, "lo", &il)?, &join(&il, "lo"))?,
                        hi: q_from_json(get(iv, "hi", &il)?, &join(&il, "hi"))?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            per_graded.push(GradedPurity {
                k: as_i64(get(g, "k", &l)?, &join(&l, "k"))?,
                dim: as_i64(get(g, "dim", &l)?, &join(&l, "dim"))? as usize,
                charpoly: poly_from_json(get(g, "charpoly", &l)?, field, &join(&l, "charpoly"))?,
                target_weight: opt_i64_from(get(g, "target_weight", &l)?, &join(&l, "target_weight"))?,
                moduli,
                pure: as_bool(get(g, "pure", &l)?, &join(&l, "pure"))?,
            });
        }
    }
    Ok(PurityReport {
        weight,
        per_graded,
        verdict,
    })
}

pub fn filtration_to_json(f: &Filtration) -> Value {
    json!({
        "dim": f.dim(),
        "steps": f.steps().iter().map(|(k, basis)| json!({
            "k": k,
            "dim": basis.cols(),
            "basis": basis.columns().iter()
                .map(|c| Value::Array(c.iter().map(scalar_to_json).collect()))
                .collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "graded_dims": f.graded_dims().iter()
            .map(|(k, d)| json!({"k": k, "dim": d}))
            .collect::<Vec<_>>(),
    })
}

fn opt<T>(v: &Option<T>, f: impl Fn(&T) -> Value) -> Value {
    v.as_ref().map_or(Value::Null, f)
}

pub fn point_to_json(p: &PointReport) -> Value {
    json!({
        "a": q_to_json(&p.a),
        "defined": p.defined,
        "purity": opt(&p.purity, purity_to_json),
        "image_purity": opt(&p.image_purity, purity_to_json),
        "signature": opt(&p.signature, signature_to_json),
        "error": opt(&p.error, |e| json!(e)),
    })
}

pub fn rigidity_to_json(r: &RigidityReport) -> Value {
    json!({
        "mu": r.mu.to_string(),
        "weight": weight_to_json(r.weight),
        "generic_signature": signature_to_json(&r.generic_signature),
        "points": r.points.iter().map(point_to_json).collect::<Vec<_>>(),
        "verdict": opt(&r.verdict, |v| json!(v.as_str())),
        "failures": r.failures.iter().map(q_to_json).collect::<Vec<_>>(),
    })
}

fn nullable<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.get(key).filter(|x| !x.is_null())
}

/// Decodes a rigidity report. Accepts a bare report or a report envelope
/// (taking its `result`).
pub fn rigidity_from_json(v: &Value) -> Result<RigidityReport> {
    let v = v.get("result").unwrap_or(v);
    let field = FieldDescriptor::Qt;
    let mu: Partition = as_str(get(v, "mu", "")?, "mu")?
        .parse()
        .map_err(|e: Error| perr("mu", e.to_string()))?;
    let weight = weight_from_json(get(v, "weight", "")?, "weight")?;
    let generic_signature = signature_from_json(get(v, "generic_signature", "")?, &field, "generic_signature")?;
    let mut points = Vec::new();
    for (i, p) in as_array(get(v, "points", "")?, "points")?.iter().enumerate() {
        let l = format!("points[{i}]");
        points.push(PointReport {
            a: q_from_json(get(p, "a", &l)?, &join(&l, "a"))?,
            defined: as_bool(get(p, "defined", &l)?, &join(&l, "defined"))?,
            purity: nullable(p, "purity")
                .map(|x| purity_from_json(x, &field, &join(&l, "purity")))
                .transpose()?,
            image_purity: nullable(p, "image_purity")
                .map(|x| purity_from_json(x, &field, &join(&l, "image_purity")))
                .transpose()?,
            signature: nullable(p, "signature")
                .map(|x| signature_from_json(x, &field, &join(&l, "signature")))
                .transpose()?,
            error: nullable(p, "error").map(|e| as_str(e, &join(&l, "error")).map(String::from)).transpose()?,
        });
    }
    let verdict = nullable(v, "verdict")
        .map(|x| as_str(x, "verdict").and_then(|s| s.parse::<RigidityVerdict>()))
        .transpose()?;
    let failures = match v.get("failures") {
        Some(list) => as_array(list, "failures")?
            .iter()
            .enumerate()
            .map(|(i, a)| q_from_json(a, &format!("failures[{i}]")))
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    Ok(RigidityReport {
        mu,
        weight,
        generic_signature,
        points,
        verdict,
        failures,
    })
}
