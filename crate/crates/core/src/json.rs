//! JSON encodings.
//!
//! * scalar: `{"num": [[n, d], ...], "den": [[k, mult], ...]}`, numerator
//!   coefficients from degree 0 upward, one `(H - k)^mult` per `den` entry
//! * element: `{"terms": [{"p", "q", "r", "s", "t", "coeff": scalar}, ...]}`
//! * irrep: `{"lambda", "mu", "n", "matrices": {"Xm2": [[..]], ..., "H": [[..]]}}`
//!   with entries as `"a/b"` strings

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

use crate::algebra::{AlgebraElement, Generator, Monomial};
use crate::linalg::Matrix;
use crate::osp::{DecompositionReport, TensorVector};
use crate::scalar::{DynamicalScalar, RatPolynomial, Rational};
use crate::verma::IrrepData;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Shape(String),
}

fn shape<T>(what: &str) -> Result<T, JsonError> {
    Err(JsonError::Shape(what.to_string()))
}

fn big(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integer literal"))
}

fn read_big(v: &Value) -> Result<BigInt, JsonError> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse()
            .map_err(|_| JsonError::Shape(format!("not an integer: {n}"))),
        _ => shape("expected an integer"),
    }
}

fn read_u32(v: &Value, key: &str) -> Result<u32, JsonError> {
    v.get(key)
        .and_then(Value::as_u64)
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| JsonError::Shape(format!("missing field `{key}`")))
}

pub fn rational_to_string(c: &Rational) -> String {
    if c.is_integer() {
        format!("{}/1", c.numer())
    } else {
        c.to_string()
    }
}

pub fn rational_from_string(s: &str) -> Result<Rational, JsonError> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let parse = |x: &str| {
        x.trim()
            .parse::<BigInt>()
            .map_err(|_| JsonError::Shape(format!("not a rational: {s}")))
    };
    let d = parse(d)?;
    if d == BigInt::from(0) {
        return shape("zero denominator");
    }
    Ok(Rational::new(parse(n)?, d))
}

pub fn scalar_to_json(f: &DynamicalScalar) -> Value {
    let num: Vec<Value> = f
        .numerator()
        .coeffs()
        .iter()
        .map(|c| json!([big(c.numer()), big(c.denom())]))
        .collect();
    let den: Vec<Value> = f.denominator().iter().map(|(k, m)| json!([k, m])).collect();
    json!({ "num": num, "den": den })
}

pub fn scalar_from_json(v: &Value) -> Result<DynamicalScalar, JsonError> {
    let num = v
        .get("num")
        .and_then(Value::as_array)
        .ok_or_else(|| JsonError::Shape("scalar needs `num`".into()))?;
    let mut coeffs = Vec::new();
    for pair in num {
        match pair.as_array().map(Vec::as_slice) {
            Some([n, d]) => {
                let d = read_big(d)?;
                if d == BigInt::from(0) {
                    return shape("zero denominator");
                }
                coeffs.push(Rational::new(read_big(n)?, d));
            }
            _ => return shape("numerator entries are [n, d] pairs"),
        }
    }
    let mut den = BTreeMap::new();
    for pair in v.get("den").and_then(Value::as_array).into_iter().flatten() {
        match pair.as_array().map(Vec::as_slice) {
            Some([k, m]) => {
                let k = k.as_i64().ok_or_else(|| JsonError::Shape("den shift".into()))?;
                let m = m
                    .as_u64()
                    .and_then(|m| u32::try_from(m).ok())
                    .ok_or_else(|| JsonError::Shape("den multiplicity".into()))?;
                *den.entry(k).or_insert(0) += m;
            }
            _ => return shape("denominator entries are [k, mult] pairs"),
        }
    }
    Ok(DynamicalScalar::new(RatPolynomial::new(coeffs), den))
}

pub fn element_to_json(a: &AlgebraElement) -> Value {
    let terms: Vec<Value> = a
        .terms()
        .map(|(m, c)| {
            json!({
                "p": m.p, "q": m.q, "r": m.r, "s": m.s, "t": m.t,
                "coeff": scalar_to_json(c),
            })
        })
        .collect();
    json!({ "terms": terms })
}

pub fn element_from_json(v: &Value) -> Result<AlgebraElement, JsonError> {
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| JsonError::Shape("element needs `terms`".into()))?;
    let mut out = Vec::new();
    for t in terms {
        let (q, s) = (read_u32(t, "q")?, read_u32(t, "s")?);
        if q > 1 || s > 1 {
            return shape("odd exponents q, s must be 0 or 1");
        }
        let m = Monomial::new(read_u32(t, "p")?, q as u8, read_u32(t, "r")?, s as u8, read_u32(t, "t")?);
        let c = scalar_from_json(t.get("coeff").ok_or_else(|| JsonError::Shape("term needs `coeff`".into()))?)?;
        out.push((m, c));
    }
    Ok(AlgebraElement::from_terms(out))
}

fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        m.iter()
            .map(|row| Value::Array(row.iter().map(|c| Value::String(rational_to_string(c))).collect()))
            .collect(),
    )
}

fn matrix_from_json(v: &Value, n: usize) -> Result<Matrix, JsonError> {
    let rows = v.as_array().ok_or_else(|| JsonError::Shape("matrix".into()))?;
    if rows.len() != n {
        return shape("matrix has the wrong number of rows");
    }
    rows.iter()
        .map(|row| {
            let row = row.as_array().ok_or_else(|| JsonError::Shape("matrix row".into()))?;
            if row.len() != n {
                return shape("matrix row has the wrong length");
            }
            row.iter()
                .map(|c| c.as_str().ok_or_else(|| JsonError::Shape("entry".into())).and_then(rational_from_string))
                .collect()
        })
        .collect()
}

pub fn irrep_to_json(data: &IrrepData) -> Value {
    let mut matrices = Map::new();
    for g in Generator::ALL {
        matrices.insert(g.ascii().to_string(), matrix_to_json(data.generator_matrix(g)));
    }
    matrices.insert("H".to_string(), matrix_to_json(&data.h_matrix));
    json!({
        "lambda": rational_to_string(&data.lambda),
        "mu": rational_to_string(&data.mu),
        "n": data.n,
        "matrices": matrices,
    })
}

pub fn irrep_from_json(v: &Value) -> Result<IrrepData, JsonError> {
    let text = |key: &str| {
        v.get(key)
            .and_then(Value::as_str)
            .ok_or_else(|| JsonError::Shape(format!("missing `{key}`")))
            .and_then(rational_from_string)
    };
    let n = read_u32(v, "n")? as usize;
    let ms = v.get("matrices").ok_or_else(|| JsonError::Shape("missing `matrices`".into()))?;
    let get = |name: &str| {
        ms.get(name)
            .ok_or_else(|| JsonError::Shape(format!("missing matrix `{name}`")))
            .and_then(|m| matrix_from_json(m, n))
    };
    let mut matrices: [Matrix; 5] = Default::default();
    for g in Generator::ALL {
        matrices[g as usize] = get(g.ascii())?;
    }
    Ok(IrrepData {
        lambda: text("lambda")?,
        mu: text("mu")?,
        n,
        matrices,
        h_matrix: get("H")?,
    })
}

pub fn tensor_vector_to_json(w: &TensorVector) -> Value {
    Value::Object(
        w.coeffs
            .iter()
            .map(|((k, j), c)| (format!("{k},{j}"), Value::String(rational_to_string(c))))
            .collect(),
    )
}

pub fn decomposition_to_json(r: &DecompositionReport) -> Value {
    json!({
        "ell": r.ell,
        "max_degree": r.max_degree,
        "lambda": rational_to_string(&r.lambda),
        "mu": rational_to_string(&r.mu),
        "singular_vectors": r.singular_vectors.iter().map(tensor_vector_to_json).collect::<Vec<_>>(),
        "all_singular": r.all_singular,
        "matches_oracle": r.matches_oracle,
        "oracle_count": r.oracle_count,
        "tallies": r.tallies.iter().map(|t| json!({
            "weight": t.weight,
            "descendant_rank": t.descendant_rank,
            "full_dim": t.full_dim,
        })).collect::<Vec<_>>(),
        "passed": r.passed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distinguished::element_q2;
    use crate::scalar::rat;

    #[test]
    fn scalar_layout() {
        let f = DynamicalScalar::from_poly(RatPolynomial::from_i64s(&[2, -3, 1]))
            * DynamicalScalar::inv_h_minus(1)
            * DynamicalScalar::inv_h_minus(-1);
        let v = scalar_to_json(&f);
        assert_eq!(v["den"], json!([[-1, 1]]));
        assert_eq!(scalar_from_json(&v).unwrap(), f);
    }

    #[test]
    fn element_round_trip() {
        let q = element_q2();
        let text = element_to_json(&q).to_string();
        let back = element_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn irrep_round_trip() {
        let data = crate::verma::build_irrep(&rat(3, 2), &rat(-3, 2)).unwrap();
        let v = irrep_to_json(&data);
        assert_eq!(v["lambda"], json!("3/2"));
        assert_eq!(v["matrices"]["h"][0][0], json!("3/2"));
        assert_eq!(irrep_from_json(&v).unwrap(), data);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(rational_from_string("1/0").is_err());
        assert!(element_from_json(&json!({"terms": [{"p": 0, "q": 2, "r": 0, "s": 0, "t": 0, "coeff": {"num": [[1, 1]]}}]})).is_err());
        assert!(scalar_from_json(&json!({"den": []})).is_err());
    }
}
