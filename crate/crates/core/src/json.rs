//! The JSON algebra format and report serialization.
//!
//! Algebras: `{"dim": n, "field": "Q"|"Qi"|{"Fp": p}, "name"?: str,
//! "brackets": [{"i": int, "j": int, "out": [[scalar, basis-index], ...]},
//! ...]}` with 1-based indices, i < j, unspecified brackets zero.

use serde_json::{json, Map, Value};

use crate::algebra::{pairs, Algebra};
use crate::error::{Error, Result};
use crate::iso::{EvidenceOutcome, FiniteFieldEvidence, Verdict};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

pub fn field_to_json(field: Field) -> Value {
    match field {
        Field::Q => json!("Q"),
        Field::Qi => json!("Qi"),
        Field::Fp(p) => json!({ "Fp": p }),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    match v {
        Value::String(s) if s == "Q" => Ok(Field::Q),
        Value::String(s) if s == "Qi" => Ok(Field::Qi),
        Value::Object(m) => {
            let p = m
                .get("Fp")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("expected {\"Fp\": prime}".into()))?;
            Ok(Field::Fp(p))
        }
        other => Err(Error::Parse(format!("unrecognized field tag {}", other))),
    }
}

pub fn algebra_to_json(a: &Algebra) -> Value {
    let mut brackets = Vec::new();
    for (i, j) in pairs(a.dim()) {
        let prod = a.bracket_basis(i, j);
        let out: Vec<Value> = prod
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| json!([c.to_json_string(), k + 1]))
            .collect();
        if !out.is_empty() {
            brackets.push(json!({ "i": i + 1, "j": j + 1, "out": out }));
        }
    }
    let mut obj = Map::new();
    obj.insert("dim".into(), json!(a.dim()));
    obj.insert("field".into(), field_to_json(a.field()));
    if let Some(name) = a.name() {
        obj.insert("name".into(), json!(name));
    }
    obj.insert("brackets".into(), Value::Array(brackets));
    Value::Object(obj)
}

pub fn algebra_from_json(v: &Value) -> Result<Algebra> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("algebra must be a JSON object".into()))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing \"dim\"".into()))? as usize;
    let field = field_from_json(
        obj.get("field")
            .ok_or_else(|| Error::Parse("missing \"field\"".into()))?,
    )?;
    let mut table =
        vec![vec![Scalar::zero(field); dim]; crate::algebra::pair_count(dim)];
    let brackets = obj
        .get("brackets")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"brackets\" array".into()))?;
    for (pos, b) in brackets.iter().enumerate() {
        let at = |k: &str| -> Result<usize> {
            b.get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("bracket {}: missing \"{}\"", pos, k)))
        };
        let (i, j) = (at("i")?, at("j")?);
        if i < 1 || j < 1 || i >= j || j > dim {
            return Err(Error::Parse(format!(
                "bracket {}: need 1 <= i < j <= dim, got i={} j={}",
                pos, i, j
            )));
        }
        let row = crate::algebra::pair_index(dim, i - 1, j - 1);
        let out = b
            .get("out")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse(format!("bracket {}: missing \"out\"", pos)))?;
        for term in out {
            let pair = term
                .as_array()
                .filter(|t| t.len() == 2)
                .ok_or_else(|| {
                    Error::Parse(format!("bracket {}: terms are [scalar, index]", pos))
                })?;
            let coeff = pair[0]
                .as_str()
                .map(|s| Scalar::parse(s, field))
                .or_else(|| pair[0].as_i64().map(|n| Ok(Scalar::from_int(n, field))))
                .ok_or_else(|| Error::Parse(format!("bracket {}: bad scalar", pos)))??;
            let k = pair[1]
                .as_u64()
                .ok_or_else(|| Error::Parse(format!("bracket {}: bad basis index", pos)))?
                as usize;
            if k < 1 || k > dim {
                return Err(Error::Parse(format!(
                    "bracket {}: basis index {} out of range",
                    pos, k
                )));
            }
            table[row][k - 1] = (table[row][k - 1].clone() + coeff).clone();
        }
    }
    let mut alg = Algebra::new(dim, field, table)?;
    if let Some(name) = obj.get("name").and_then(Value::as_str) {
        alg = alg.with_name(name);
    }
    Ok(alg)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                (0..m.cols())
                    .map(|j| json!(m[(i, j)].to_json_string()))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    match v {
        Verdict::DistinctByInvariant {
            invariant,
            left,
            right,
        } => json!({
            "verdict": "distinct-by-invariant",
            "invariant": invariant,
            "left": left,
            "right": right,
        }),
        Verdict::IsomorphicWitness(m) => json!({
            "verdict": "isomorphic-witness",
            "witness": matrix_to_json(m),
        }),
        Verdict::UndecidedEvidence(ev) => json!({
            "verdict": "undecided-evidence",
            "evidence": ev.iter().map(evidence_to_json).collect::<Vec<_>>(),
        }),
    }
}

fn evidence_to_json(e: &FiniteFieldEvidence) -> Value {
    let outcome = match e.outcome {
        EvidenceOutcome::Witness => "witness",
        EvidenceOutcome::ExhaustedNone => "exhausted-none",
        EvidenceOutcome::Budget => "budget",
        EvidenceOutcome::NotReducible => "not-reducible",
    };
    json!({ "p": e.p, "outcome": outcome })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{table1, Table1Name};

    #[test]
    fn algebra_roundtrip_q() {
        let g3 = table1(
            Table1Name::G3,
            Some(&Scalar::from_ratio(-3, 2, Field::Q)),
            Field::Q,
        )
        .unwrap();
        let v = algebra_to_json(&g3);
        let back = algebra_from_json(&v).unwrap();
        assert_eq!(back.table(), g3.table());
        assert_eq!(back.name(), g3.name());
    }

    #[test]
    fn algebra_roundtrip_fp_and_qi() {
        for field in [Field::Fp(5), Field::Qi] {
            let a = table1(Table1Name::A1, Some(&Scalar::from_int(2, field)), field).unwrap();
            let back = algebra_from_json(&algebra_to_json(&a)).unwrap();
            assert_eq!(back.table(), a.table());
        }
    }

    #[test]
    fn rejects_bad_indices() {
        let v = json!({
            "dim": 3,
            "field": "Q",
            "brackets": [{"i": 2, "j": 2, "out": [["1", 1]]}],
        });
        assert!(matches!(algebra_from_json(&v), Err(Error::Parse(_))));
    }
}
