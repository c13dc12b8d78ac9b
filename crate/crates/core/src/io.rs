//! JSON and CSV formats.
//!
//! Scalars: rationals as strings `"a"` or `"a/b"`, residues as integers in
//! `[0, p)`. Both forms are accepted on input.

use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::GroupAlgebra;
use crate::chain::{Chain, TensorChain};
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::scalar::{FieldSpec, Scalar};

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Integer(_) | Scalar::Rational(_) => Value::String(s.to_string()),
        Scalar::Residue { value, .. } => Value::from(*value),
    }
}

pub fn scalar_from_json(field: FieldSpec, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse_scalar(s),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(field.from_i64(i)),
            None => field.parse_scalar(&n.to_string()),
        },
        other => Err(Error::parse(format!("expected a scalar, found {other}"))),
    }
}

#[derive(Serialize, Deserialize)]
struct CochainFile {
    degree: usize,
    group: String,
    field: String,
    values: Vec<Value>,
}

pub fn cochain_to_json(alg: &GroupAlgebra, a: &Cochain) -> Value {
    serde_json::to_value(CochainFile {
        degree: a.degree(),
        group: alg.group().name().to_string(),
        field: a.field().to_string(),
        values: a.values().iter().map(scalar_to_json).collect(),
    })
    .expect("plain data serializes")
}

/// Reads a cochain over `alg`; the file's group and field must match.
pub fn cochain_from_json(alg: &GroupAlgebra, v: &Value) -> Result<Cochain> {
    let file: CochainFile = serde_json::from_value(v.clone())?;
    let field: FieldSpec = file.field.parse()?;
    if field != alg.field() {
        return Err(Error::FieldMismatch(alg.field().to_string(), field.to_string()));
    }
    if file.group != alg.group().name() {
        return Err(Error::parse(format!(
            "cochain is over {}, expected {}",
            file.group,
            alg.group().name()
        )));
    }
    let values = file
        .values
        .iter()
        .map(|x| scalar_from_json(field, x))
        .collect::<Result<Vec<_>>>()?;
    Cochain::from_values(alg, file.degree, values)
}

/// The `group` and `field` named in a cochain file, without reading values.
pub fn cochain_header(v: &Value) -> Result<(String, FieldSpec)> {
    let group = v
        .get("group")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::parse("cochain file lacks \"group\""))?;
    let field = v
        .get("field")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::parse("cochain file lacks \"field\""))?;
    Ok((group.to_string(), field.parse()?))
}

#[derive(Serialize, Deserialize)]
struct ChainTerm {
    tuple: Vec<usize>,
    coeff: Value,
}

#[derive(Serialize, Deserialize)]
struct ChainFile {
    degree: usize,
    terms: Vec<ChainTerm>,
}

pub fn chain_to_json(c: &Chain) -> Value {
    serde_json::to_value(ChainFile {
        degree: c.degree(),
        terms: c
            .terms()
            .map(|(t, s)| ChainTerm {
                tuple: t.clone(),
                coeff: scalar_to_json(s),
            })
            .collect(),
    })
    .expect("plain data serializes")
}

pub fn chain_from_json(field: FieldSpec, v: &Value) -> Result<Chain> {
    let file: ChainFile = serde_json::from_value(v.clone())?;
    let terms = file
        .terms
        .iter()
        .map(|t| Ok((t.tuple.clone(), scalar_from_json(field, &t.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    Chain::from_terms(field, file.degree, terms)
}

pub fn tensor_chain_to_json(t: &TensorChain) -> Value {
    let terms: Vec<Value> = t
        .terms()
        .map(|(l, r, s)| serde_json::json!({"left": l, "right": r, "coeff": scalar_to_json(s)}))
        .collect();
    serde_json::json!({"degree": t.degree(), "terms": terms})
}

/// Parses the generator shorthand `(g0,g1,...)^*` with element labels (or
/// indices) into a dual generator.
pub fn parse_generator(alg: &GroupAlgebra, s: &str) -> Result<Cochain> {
    let inner = s
        .trim()
        .strip_suffix("^*")
        .and_then(|x| x.trim().strip_prefix('('))
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| Error::parse(format!("expected (g0,...)^*, got {s:?}")))?;
    let tuple = inner
        .split(',')
        .map(|l| alg.group().element(l.trim()))
        .collect::<Result<Vec<_>>>()?;
    Cochain::generator(alg, &tuple)
}

/// Writes the group table in the ingestion format: `order=n`, then rows.
pub fn write_group_csv<W: Write>(group: &FiniteGroup, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
    w.write_record([format!("order={}", group.order())])?;
    for a in 0..group.order() {
        w.write_record((0..group.order()).map(|b| group.mul(a, b).to_string()))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_cochain;

    #[test]
    fn cochain_round_trip() {
        for field in FieldSpec::SUITE {
            let alg = GroupAlgebra::new(FiniteGroup::parse("S3").unwrap(), field);
            let a = random_cochain(&alg, 1, 5).unwrap();
            let v = cochain_to_json(&alg, &a);
            assert_eq!(cochain_from_json(&alg, &v).unwrap(), a);
            let text = serde_json::to_string(&v).unwrap();
            assert!(text.starts_with(r#"{"degree":1,"group":"S3","field":""#));
        }
    }

    #[test]
    fn scalar_forms() {
        let q = FieldSpec::Rationals;
        assert_eq!(scalar_to_json(&q.parse_scalar("-6/4").unwrap()), Value::from("-3/2"));
        assert_eq!(scalar_to_json(&FieldSpec::Prime(5).from_i64(-1)), Value::from(4));
        assert_eq!(scalar_from_json(q, &Value::from(3)).unwrap(), q.from_i64(3));
        assert!(scalar_from_json(q, &Value::Bool(true)).is_err());
    }

    #[test]
    fn mismatches_rejected() {
        let alg = GroupAlgebra::new(FiniteGroup::parse("C2").unwrap(), FieldSpec::Rationals);
        let a = Cochain::generator(&alg, &[1]).unwrap();
        let v = cochain_to_json(&alg, &a);
        let f2 = GroupAlgebra::new(FiniteGroup::parse("C2").unwrap(), FieldSpec::Prime(2));
        assert!(matches!(cochain_from_json(&f2, &v), Err(Error::FieldMismatch(..))));
        let c3 = GroupAlgebra::new(FiniteGroup::parse("C3").unwrap(), FieldSpec::Rationals);
        assert!(cochain_from_json(&c3, &v).is_err());
        assert_eq!(cochain_header(&v).unwrap(), ("C2".to_string(), FieldSpec::Rationals));
    }

    #[test]
    fn chain_round_trip() {
        let q = FieldSpec::Rationals;
        let c = Chain::from_terms(q, 1, vec![(vec![0, 1], q.from_i64(2)), (vec![1, 0], q.from_i64(-1))]).unwrap();
        let v = chain_to_json(&c);
        assert_eq!(
            v.to_string(),
            r#"{"degree":1,"terms":[{"tuple":[0,1],"coeff":"2"},{"tuple":[1,0],"coeff":"-1"}]}"#
        );
        assert_eq!(chain_from_json(q, &v).unwrap(), c);
    }

    #[test]
    fn generator_shorthand() {
        let alg = GroupAlgebra::new(FiniteGroup::parse("C2").unwrap(), FieldSpec::Rationals);
        assert_eq!(parse_generator(&alg, "(x,e)^*").unwrap(), Cochain::generator(&alg, &[1, 0]).unwrap());
        assert!(parse_generator(&alg, "(x,y)^*").is_err());
        assert!(parse_generator(&alg, "x,e").is_err());
    }

    #[test]
    fn group_csv_round_trip() {
        let g = FiniteGroup::parse("D4").unwrap();
        let mut buf = Vec::new();
        write_group_csv(&g, &mut buf).unwrap();
        let h = FiniteGroup::from_csv(&buf[..]).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(g.mul(a, b), h.mul(a, b));
            }
        }
    }
}
