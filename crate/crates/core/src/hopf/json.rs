//! Structure-constant files: one JSON object with sparse coordinate lists.

use serde_json::{json, Value};

use super::axioms::{verify_axioms, AxiomReport};
use super::{AlgebraElement, HopfStructure, Scalar, StructureData, TensorElement};
use crate::error::{Error, Result};

pub struct StructureFile {
    pub structure: HopfStructure,
    pub r: Option<TensorElement>,
    pub theta: Option<AlgebraElement>,
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn as_index(v: &Value, dim: usize, what: &str) -> Result<u32> {
    let i = v
        .as_u64()
        .ok_or_else(|| perr(format!("{what}: index must be a nonnegative integer")))?;
    if i as usize >= dim {
        return Err(Error::InvalidBasis {
            index: i as usize,
            dim,
        });
    }
    Ok(i as u32)
}

fn as_scalar(v: &Value, l: u32, what: &str) -> Result<Scalar> {
    let s = Scalar::from_json_value(v).map_err(|e| perr(format!("{what}: {e}")))?;
    if s.order() != l {
        return Err(perr(format!(
            "{what}: scalar of order {} in a file with l = {l}",
            s.order()
        )));
    }
    Ok(s)
}

/// Rows of a coordinate list with `n` indices followed by a scalar.
fn entries(
    obj: &Value,
    key: &str,
    n: usize,
    dim: usize,
    l: u32,
) -> Result<Vec<(Vec<u32>, Scalar)>> {
    let arr = obj
        .get(key)
        .ok_or_else(|| perr(format!("missing field {key:?}")))?
        .as_array()
        .ok_or_else(|| perr(format!("{key:?} must be an array")))?;
    arr.iter()
        .map(|row| {
            let row = row
                .as_array()
                .ok_or_else(|| perr(format!("{key}: entries must be arrays")))?;
            if row.len() != n + 1 {
                return Err(perr(format!("{key}: entries need {} fields", n + 1)));
            }
            let idx = row[..n]
                .iter()
                .map(|v| as_index(v, dim, key))
                .collect::<Result<Vec<_>>>()?;
            Ok((idx, as_scalar(&row[n], l, key)?))
        })
        .collect()
}

pub fn structure_from_json(text: &str) -> Result<StructureFile> {
    let v: Value = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
    let l = v
        .get("l")
        .and_then(Value::as_u64)
        .ok_or_else(|| perr("missing integer field \"l\""))? as u32;
    crate::scalars::check_order(l)?;
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| perr("missing integer field \"dim\""))? as usize;
    let labels: Vec<String> = match v.get("basis") {
        Some(b) => b
            .as_array()
            .ok_or_else(|| perr("\"basis\" must be an array"))?
            .iter()
            .map(|s| {
                s.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| perr("basis labels must be strings"))
            })
            .collect::<Result<_>>()?,
        None => (0..dim).map(|i| format!("b{i}")).collect(),
    };
    if labels.len() != dim {
        return Err(perr(format!("{} basis labels for dim {dim}", labels.len())));
    }
    let mut mult = vec![Vec::new(); dim * dim];
    for (k, c) in entries(&v, "mult", 3, dim, l)? {
        mult[k[0] as usize * dim + k[1] as usize].push((k[2], c));
    }
    let mut coproduct = vec![Vec::new(); dim];
    for (k, c) in entries(&v, "coproduct", 3, dim, l)? {
        coproduct[k[0] as usize].push((k[1], k[2], c));
    }
    let mut antipode = vec![Vec::new(); dim];
    for (k, c) in entries(&v, "antipode", 2, dim, l)? {
        antipode[k[0] as usize].push((k[1], c));
    }
    let mut counit = vec![Scalar::zero(l); dim];
    for (k, c) in entries(&v, "counit", 1, dim, l)? {
        counit[k[0] as usize] += &c;
    }
    let unit = entries(&v, "unit", 1, dim, l)?
        .into_iter()
        .map(|(k, c)| (k[0], c))
        .collect();
    let mut structure = HopfStructure::new(StructureData {
        order: l,
        labels,
        mult,
        unit,
        counit,
        coproduct,
        antipode,
    })?;
    if let Some(gs) = v.get("generators") {
        let gs = gs
            .as_array()
            .ok_or_else(|| perr("\"generators\" must be an array"))?;
        let mut elems = Vec::new();
        for g in gs {
            let wrapped = json!({ "g": g });
            let terms = entries(&wrapped, "g", 1, dim, l)?;
            let t: Vec<(usize, Scalar)> =
                terms.into_iter().map(|(k, c)| (k[0] as usize, c)).collect();
            elems.push(structure.element(&t)?);
        }
        structure.set_generators(&elems)?;
    }
    let r = if v.get("R").is_some() {
        let t: Vec<(Vec<usize>, Scalar)> = entries(&v, "R", 2, dim, l)?
            .into_iter()
            .map(|(k, c)| (k.into_iter().map(|i| i as usize).collect(), c))
            .collect();
        Some(structure.tensor_from_terms(2, &t)?)
    } else {
        None
    };
    let theta = if v.get("theta").is_some() {
        let t: Vec<(usize, Scalar)> = entries(&v, "theta", 1, dim, l)?
            .into_iter()
            .map(|(k, c)| (k[0] as usize, c))
            .collect();
        Some(structure.element(&t)?)
    } else {
        None
    };
    Ok(StructureFile {
        structure,
        r,
        theta,
    })
}

/// Parses and runs the axiom suite.
pub fn load_structure(text: &str) -> Result<(StructureFile, AxiomReport)> {
    let f = structure_from_json(text)?;
    let rep = verify_axioms(&f.structure, f.r.as_ref(), f.theta.as_ref());
    Ok((f, rep))
}

fn terms_json(t: &[(u32, Scalar)]) -> Vec<Value> {
    t.iter()
        .map(|(i, c)| json!([i, c.to_json_value()]))
        .collect()
}

/// Deterministic export (entries sorted by index tuple).
pub fn structure_to_json(
    h: &HopfStructure,
    r: Option<&TensorElement>,
    theta: Option<&AlgebraElement>,
) -> Value {
    let dim = h.dim();
    let mut mult = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for (k, c) in h.mul_basis(i as u32, j as u32) {
                mult.push(json!([i, j, k, c.to_json_value()]));
            }
        }
    }
    let mut coproduct = Vec::new();
    for i in 0..dim {
        for (a, b, c) in h.coproduct_basis(i as u32) {
            coproduct.push(json!([i, a, b, c.to_json_value()]));
        }
    }
    let mut antipode = Vec::new();
    for i in 0..dim {
        for (k, c) in h.antipode_basis(i as u32) {
            antipode.push(json!([i, k, c.to_json_value()]));
        }
    }
    let counit: Vec<Value> = (0..dim)
        .filter(|&i| !h.counit_basis(i as u32).is_zero())
        .map(|i| json!([i, h.counit_basis(i as u32).to_json_value()]))
        .collect();
    let mut out = json!({
        "l": h.order(),
        "dim": dim,
        "basis": h.labels(),
        "mult": mult,
        "coproduct": coproduct,
        "antipode": antipode,
        "counit": counit,
        "unit": terms_json(h.unit_terms()),
    });
    if !h.generators.is_empty() {
        out["generators"] = Value::Array(
            h.generators
                .iter()
                .map(|g| Value::Array(terms_json(g)))
                .collect(),
        );
    }
    if let Some(r) = r {
        out["R"] = Value::Array(
            r.sorted_terms()
                .iter()
                .map(|(k, c)| json!([k[0], k[1], c.to_json_value()]))
                .collect(),
        );
    }
    if let Some(t) = theta {
        out["theta"] = Value::Array(terms_json(&t.terms));
    }
    out
}
