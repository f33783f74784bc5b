//! JSON file formats for vectors, and 15-significant-digit output.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::space::{CocycleVector, Element, SparseVector, StepFunction};
use crate::word::Word;

/// `[index, re, im]`, or `[index, re]` for a real entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum Entry<I> {
    Complex(I, f64, f64),
    Real(I, f64),
}

impl<I> Entry<I> {
    fn split(self) -> (I, Complex64) {
        match self {
            Entry::Complex(i, re, im) => (i, Complex64::new(re, im)),
            Entry::Real(i, re) => (i, Complex64::new(re, 0.0)),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum WordSparse {
    Sparse { entries: Vec<Entry<Word>> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum VectorFile {
    Sparse { entries: Vec<Entry<u64>> },
    Step { breakpoints: Vec<f64>, values: Vec<(f64, f64)> },
    Nested { entries: Vec<(Word, WordSparse)> },
}

fn parse_file(text: &str) -> Result<VectorFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("vector file: {e}")))
}

fn sparse_entries<I: Clone>(v: &SparseVector<I>) -> Vec<Entry<I>>
where
    I: Ord,
{
    v.iter().map(|(i, z)| Entry::Complex(i.clone(), z.re, z.im)).collect()
}

pub fn parse_element(text: &str) -> Result<Element> {
    match parse_file(text)? {
        VectorFile::Sparse { entries } => Ok(Element::Sparse(SparseVector::from_entries(
            entries.into_iter().map(Entry::split),
        ))),
        VectorFile::Step { breakpoints, values } => Ok(Element::Step(StepFunction::new(
            breakpoints,
            values.into_iter().map(|(re, im)| Complex64::new(re, im)).collect(),
        )?)),
        VectorFile::Nested { .. } => Err(Error::Parse("expected a sparse or step vector, got nested".into())),
    }
}

pub fn parse_cocycle(text: &str) -> Result<CocycleVector> {
    match parse_file(text)? {
        VectorFile::Nested { entries } => Ok(CocycleVector::from_entries(entries.into_iter().map(
            |(w, WordSparse::Sparse { entries })| (w, SparseVector::from_entries(entries.into_iter().map(Entry::split))),
        ))),
        _ => Err(Error::Parse("expected a nested vector".into())),
    }
}

pub fn element_json(f: &Element) -> Value {
    let file = match f {
        Element::Sparse(v) => VectorFile::Sparse {
            entries: sparse_entries(v),
        },
        Element::Step(v) => VectorFile::Step {
            breakpoints: v.breakpoints().to_vec(),
            values: v.values().iter().map(|z| (z.re, z.im)).collect(),
        },
    };
    round_json(serde_json::to_value(file).expect("vector serializes"))
}

pub fn cocycle_json(xi: &CocycleVector) -> Value {
    let file = VectorFile::Nested {
        entries: xi
            .iter()
            .map(|(w, v)| (w.clone(), WordSparse::Sparse { entries: sparse_entries(v) }))
            .collect(),
    };
    round_json(serde_json::to_value(file).expect("vector serializes"))
}

/// Rounds to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// Rounds every float in a JSON tree; integers are left alone.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round15(n.as_f64().unwrap_or(f64::NAN));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

/// Serializes with rounded floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(round_json(v).to_string())
}

/// A float as printed in CSV output.
pub fn fmt_num(x: f64) -> String {
    let r = round15(x);
    if r != 0.0 && r.is_finite() && !(1e-5..1e15).contains(&r.abs()) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::reduce;

    #[test]
    fn element_round_trip() {
        let f = parse_element(r#"{"kind":"sparse","entries":[[1,3],[2,4,0.5]]}"#).unwrap();
        match &f {
            Element::Sparse(v) => {
                assert_eq!(v.get(&1), Complex64::new(3.0, 0.0));
                assert_eq!(v.get(&2), Complex64::new(4.0, 0.5));
            }
            _ => panic!("wrong kind"),
        }
        assert_eq!(parse_element(&element_json(&f).to_string()).unwrap(), f);
        let s = parse_element(r#"{"kind":"step","breakpoints":[0,0.5,1],"values":[[1,0],[0,2]]}"#).unwrap();
        assert_eq!(parse_element(&element_json(&s).to_string()).unwrap(), s);
        assert!(matches!(parse_element(r#"{"kind":"cube"}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn cocycle_round_trip() {
        let text = r#"{"kind":"nested","entries":[["ab",{"kind":"sparse","entries":[["B",1,0],["",0.5]]}]]}"#;
        let xi = parse_cocycle(text).unwrap();
        let inner = xi.get(&reduce("ab").unwrap()).unwrap();
        assert_eq!(inner.get(&Word::identity()), Complex64::new(0.5, 0.0));
        assert_eq!(parse_cocycle(&cocycle_json(&xi).to_string()).unwrap(), xi);
    }

    #[test]
    fn rounding() {
        assert_eq!(round15(0.1 + 0.2), 0.3);
        assert_eq!(round15(1.0 / 3.0), 0.333333333333333);
        assert_eq!(to_json(&[2.0f64.sqrt()]).unwrap(), "[1.4142135623731]");
        assert_eq!(to_json(&[-0.0f64]).unwrap(), "[0.0]");
        assert_eq!(fmt_num(6.897495340809471e63), "6.89749534080947e63");
        assert_eq!(fmt_num(0.25), "0.25");
    }
}
