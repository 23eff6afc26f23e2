//! The JSON file formats and report schemas: group parameters, algebra
//! elements, code files, subgroup generator lists, decomposition and
//! analysis reports.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::{AlgebraElement, GroupParams};
use crate::codes::MetacyclicCode;
use crate::error::{Error, Result};
use crate::gf::FieldDesc;
use crate::induced::SubgroupSpec;
use crate::poly::{self};
use crate::wedderburn::Decomposition;

pub fn params_to_json(params: &GroupParams) -> Value {
    let mut obj = json!({
        "n": params.n,
        "m": params.m,
        "r": params.r,
        "q": params.field.size(),
    });
    if params.field.degree() > 1 {
        obj["modulus"] = json!(params.field.base_modulus());
    }
    obj
}

pub fn params_from_json(v: &Value) -> Result<Arc<GroupParams>> {
    let get = |k: &str| -> Result<u64> {
        v.get(k)
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse(format!("params: missing field '{k}'")))
    };
    let (n, m, r, q) = (get("n")?, get("m")?, get("r")?, get("q")?);
    let field = match v.get("modulus") {
        Some(Value::Array(a)) => {
            let coeffs = a
                .iter()
                .map(|x| {
                    x.as_u64()
                        .ok_or_else(|| Error::Parse("params: bad modulus entry".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            let p = crate::arith::prime_power_split(q)
                .ok_or(Error::NotPrimePower(q))?
                .0;
            FieldDesc::with_modulus(p, coeffs)?
        }
        _ => FieldDesc::prime_power(q)?,
    };
    GroupParams::new(&field, n as usize, m as usize, r as usize)
}

/// `{"params": …, "rows": [[…], …]}`, row j = the coefficients of P_j in
/// Σ_j b^j P_j(a), little-endian.
pub fn element_to_json(e: &AlgebraElement, with_params: bool) -> Value {
    let params = e.params();
    let rows: Vec<Value> = (0..params.m)
        .map(|j| {
            Value::Array(
                (0..params.n)
                    .map(|i| poly::elem_to_json(e.coeff(j, i)))
                    .collect(),
            )
        })
        .collect();
    if with_params {
        json!({"params": params_to_json(params), "rows": rows})
    } else {
        json!({"rows": rows})
    }
}

pub fn element_from_json(params: &Arc<GroupParams>, v: &Value) -> Result<AlgebraElement> {
    if let Some(embedded) = v.get("params") {
        let other = params_from_json(embedded)?;
        if other != *params {
            return Err(Error::ParamMismatch);
        }
    }
    let rows = v
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("element: missing 'rows'".into()))?;
    if rows.len() != params.m {
        return Err(Error::Parse(format!(
            "element: expected {} rows, found {}",
            params.m,
            rows.len()
        )));
    }
    let mut e = AlgebraElement::zero(params);
    for (j, row) in rows.iter().enumerate() {
        let cells = row
            .as_array()
            .ok_or_else(|| Error::Parse("element: row is not an array".into()))?;
        if cells.len() > params.n {
            return Err(Error::Parse("element: row longer than n".into()));
        }
        for (i, cell) in cells.iter().enumerate() {
            e.set_coeff(j, i, poly::elem_from_json(&params.field, cell)?);
        }
    }
    Ok(e)
}

/// `{"params": …, "basis": [element, …]}`.
pub fn code_to_json(c: &MetacyclicCode) -> Value {
    json!({
        "params": params_to_json(c.params()),
        "basis": c.basis().iter().map(|b| element_to_json(b, false)).collect::<Vec<_>>(),
    })
}

pub fn code_from_json(v: &Value) -> Result<MetacyclicCode> {
    let params = params_from_json(
        v.get("params")
            .ok_or_else(|| Error::Parse("code: missing 'params'".into()))?,
    )?;
    let basis = v
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("code: missing 'basis'".into()))?
        .iter()
        .map(|b| element_from_json(&params, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(MetacyclicCode::from_span(&params, basis))
}

/// Group element text: both "a^i*b^j" and "b^j*a^i" parse; any product of
/// generator powers is accepted and composed left to right.
pub fn parse_group_element(params: &Arc<GroupParams>, text: &str) -> Result<(usize, usize)> {
    let mut acc = (0usize, 0usize);
    for tok in text.split('*') {
        let tok = tok.trim();
        if tok.is_empty() || tok == "e" {
            continue;
        }
        let (sym, exp) = match tok.split_once('^') {
            Some((s, e)) => {
                let exp: usize = e
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in '{tok}'")))?;
                (s.trim(), exp)
            }
            None => (tok, 1),
        };
        let g = match sym {
            "a" => (0usize, exp % params.n),
            "b" => (exp % params.m, 0usize),
            _ => return Err(Error::Parse(format!("unknown generator '{sym}'"))),
        };
        acc = params.compose(acc, g);
    }
    Ok(acc)
}

/// Renders b^j a^i in the emitted "a^i*b^j" form.
pub fn group_element_text(params: &GroupParams, (j, i): (usize, usize)) -> String {
    // b^j a^i = a^(i·r^j) b^j
    let ai = i * params.r_pow(j) % params.n;
    match (ai, j) {
        (0, 0) => "e".to_string(),
        (0, j) => format!("b^{j}"),
        (i, 0) => format!("a^{i}"),
        (i, j) => format!("a^{i}*b^{j}"),
    }
}

/// `{"generators": ["a", "b^2*a^3"]}`.
pub fn subgroup_from_json(params: &Arc<GroupParams>, v: &Value) -> Result<SubgroupSpec> {
    let gens = v
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("subgroup: missing 'generators'".into()))?
        .iter()
        .map(|g| {
            g.as_str()
                .ok_or_else(|| Error::Parse("subgroup: generator is not a string".into()))
                .and_then(|s| parse_group_element(params, s))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SubgroupSpec::from_generators(params, &gens))
}

/// Orbit-table report: `{"n","m","r","q","orbits":[{"rep_poly","s","u","k","kind"}]}`,
/// extended with the refined shapes and the prime-m classification.
pub fn decompose_report(dec: &Decomposition) -> Value {
    let params = dec.params();
    let q = params.field.size();
    let reports = dec.classify();
    let orbits: Vec<Value> = dec
        .orbits()
        .iter()
        .zip(reports.iter())
        .map(|(o, rep)| {
            let fd = &dec.factorization().factors[o.rep()];
            let mut item = json!({
                "rep_poly": fd.f.to_text(),
                "s": o.s,
                "u": o.u,
                "k": o.theta_exponent,
                "kind": o.kind.label(),
                "shape": rep.shape_text(q),
            });
            if let Some(class) = rep.prime_m_class {
                item["class"] = json!(match class {
                    crate::wedderburn::PrimeMClass::RootFixed => "root fixed",
                    crate::wedderburn::PrimeMClass::SelfReciprocal => "self-reciprocal",
                    crate::wedderburn::PrimeMClass::Moved => "moved",
                });
            }
            if let Some((h1, h2)) = rep.mixed_split {
                item["mixed_split"] = json!([h1, h2]);
            }
            item
        })
        .collect();
    json!({
        "n": params.n,
        "m": params.m,
        "r": params.r,
        "q": q,
        "dimension": dec.dimension_sum(),
        "orbits": orbits,
    })
}

/// Full analysis of one code: dimension, distances, GC view, attack census.
/// The code itself is embedded so reports round-trip as inputs.
pub fn analysis_report(
    code: &MetacyclicCode,
    dec: &Decomposition,
    budget: u64,
    seed: u64,
) -> Result<Value> {
    if code.is_zero() {
        return Err(Error::ZeroCode);
    }
    let d_exact = match code.min_distance_exact(budget) {
        Ok(d) => Some(d),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let cert = code.min_distance_bound(dec, budget)?;
    let gc = code.gc_view(dec, budget)?;
    let attack = code.attack_feasibility(dec, budget, seed)?;
    let cert_entries: Vec<Value> = cert
        .entries
        .iter()
        .map(|e| {
            json!({
                "orbit": e.orbit,
                "d_i": e.d_symbol,
                "d_i_expanded": e.d_expanded,
                "v_sum_distance": e.v_sum_distance,
                "product": e.product,
            })
        })
        .collect();
    Ok(json!({
        "params": params_to_json(code.params()),
        "basis": code.basis().iter().map(|b| element_to_json(b, false)).collect::<Vec<_>>(),
        "dim": code.dim(),
        "d_exact": d_exact,
        "d_bound": cert.bound,
        "d_bound_expanded_reading": cert.bound_expanded,
        "bound_certificate": cert_entries,
        "gc": {
            "inner_generator": gc.inner_generator.to_text(),
            "inner_dim": gc.inner_dim,
            "inner_distance": gc.inner_distance,
            "outer": gc.outer.iter().map(|o| json!({
                "orbit": o.orbit,
                "length": o.length,
                "dim_symbol": o.dim_symbol,
                "dim_fq": o.dim_fq,
            })).collect::<Vec<_>>(),
        },
        "attack": {
            "threshold": attack.threshold,
            "count": attack.count,
            "exact": attack.exact,
            "dual_dim": attack.dual_dim,
            "verdict": attack.verdict.label(),
        },
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes;

    fn params(n: usize, m: usize, r: usize, q: u64) -> Arc<GroupParams> {
        let f = FieldDesc::prime_power(q).unwrap();
        GroupParams::new(&f, n, m, r).unwrap()
    }

    #[test]
    fn params_roundtrip() {
        for (n, m, r, q) in [(7usize, 3usize, 2usize, 2u64), (5, 2, 4, 9)] {
            let p = params(n, m, r, q);
            let j = params_to_json(&p);
            let back = params_from_json(&j).unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn element_roundtrip() {
        let p = params(7, 3, 2, 2);
        let e = AlgebraElement::basis(&p, 1, 3).add(&AlgebraElement::basis(&p, 2, 6));
        let j = element_to_json(&e, true);
        assert_eq!(element_from_json(&p, &j).unwrap(), e);
    }

    #[test]
    fn code_roundtrip() {
        let p = params(7, 3, 2, 2);
        let mut gen = AlgebraElement::zero(&p);
        for i in 0..7 {
            gen.set_coeff(0, i, p.field.one());
        }
        let c = codes::ideal_from_generators(&p, &[gen]).unwrap();
        let j = code_to_json(&c);
        let back = code_from_json(&j).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn group_element_text_roundtrip() {
        let p = params(7, 3, 2, 2);
        for j in 0..3 {
            for i in 0..7 {
                let text = group_element_text(&p, (j, i));
                assert_eq!(parse_group_element(&p, &text).unwrap(), (j, i), "{text}");
            }
        }
        // both orders parse
        assert_eq!(
            parse_group_element(&p, "b^2*a^3").unwrap(),
            parse_group_element(&p, "a^5*b^2").unwrap(),
            // b^2 a^3 = a^(3·r^2) b^2 = a^(12 mod 7) b^2 = a^5 b^2
        );
    }
}
