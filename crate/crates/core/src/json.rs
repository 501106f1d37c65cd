//! JSON forms of tensors, fields, multiforms and cohomology tables. Indices are
//! 1-based on the wire; rationals are written as decimal numerator and denominator
//! strings.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cohomology::CohomologyTable;
use crate::diagrams::Diagram;
use crate::error::{Error, Result};
use crate::fields::PolyTensorField;
use crate::multiforms::Multiform;
use crate::tensor::{satisfies_schur_conditions, Tensor, Variance};

#[derive(Serialize, Deserialize)]
struct TensorEntry {
    idx: Vec<usize>,
    num: String,
    #[serde(default = "one_string")]
    den: String,
}

#[derive(Serialize, Deserialize)]
struct TensorDoc {
    dim: usize,
    degree: usize,
    variance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shape: Option<Vec<usize>>,
    entries: Vec<TensorEntry>,
}

#[derive(Serialize, Deserialize)]
struct FieldEntry {
    idx: Vec<usize>,
    exp: Vec<u32>,
    num: String,
    #[serde(default = "one_string")]
    den: String,
}

#[derive(Serialize, Deserialize)]
struct FieldDoc {
    #[serde(rename = "N")]
    n: usize,
    dim: usize,
    degree: usize,
    poly_degree: usize,
    variance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shape: Option<Vec<usize>>,
    entries: Vec<FieldEntry>,
}

#[derive(Serialize, Deserialize)]
struct MultiformEntry {
    slots: Vec<Vec<usize>>,
    exp: Vec<u32>,
    num: String,
    #[serde(default = "one_string")]
    den: String,
}

#[derive(Serialize, Deserialize)]
struct MultiformDoc {
    #[serde(rename = "N")]
    n: usize,
    dim: usize,
    degrees: Vec<usize>,
    entries: Vec<MultiformEntry>,
}

fn one_string() -> String {
    "1".into()
}

fn rational(num: &str, den: &str, at: &str) -> Result<BigRational> {
    let n = BigInt::from_str(num.trim()).map_err(|_| Error::malformed(format!("{at}.num"), format!("not an integer: {num:?}")))?;
    let d = BigInt::from_str(den.trim()).map_err(|_| Error::malformed(format!("{at}.den"), format!("not an integer: {den:?}")))?;
    if d.is_zero() {
        return Err(Error::malformed(format!("{at}.den"), "zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

fn variance(s: &str) -> Result<Variance> {
    match s {
        "co" => Ok(Variance::Co),
        "contra" => Ok(Variance::Contra),
        other => Err(Error::malformed("variance", format!("expected \"co\" or \"contra\", got {other:?}"))),
    }
}

fn variance_name(v: Variance) -> String {
    match v {
        Variance::Co => "co".into(),
        Variance::Contra => "contra".into(),
    }
}

fn zero_based(idx: &[usize], dim: usize, at: &str) -> Result<Vec<u8>> {
    idx.iter()
        .enumerate()
        .map(|(k, &i)| {
            if i == 0 || i > dim {
                Err(Error::malformed(format!("{at}.idx[{k}]"), format!("index {i} outside 1..={dim}")))
            } else {
                Ok((i - 1) as u8)
            }
        })
        .collect()
}

fn one_based(idx: &[u8]) -> Vec<usize> {
    idx.iter().map(|&i| i as usize + 1).collect()
}

fn split(x: &BigRational) -> (String, String) {
    (x.numer().to_string(), x.denom().to_string())
}

pub fn tensor_from_json(text: &str) -> Result<Tensor> {
    let doc: TensorDoc = serde_json::from_str(text)?;
    let mut t = Tensor::zero(doc.dim, doc.degree, variance(&doc.variance)?);
    let shape = doc
        .shape
        .map(|rows| Diagram::new(rows).map_err(|e| Error::malformed("shape", e.to_string())))
        .transpose()?;
    if let Some(s) = &shape {
        if s.size() != doc.degree {
            return Err(Error::malformed("shape", format!("{} cells for degree {}", s.size(), doc.degree)));
        }
        t = t.with_shape(s.clone());
    }
    for (k, e) in doc.entries.iter().enumerate() {
        let at = format!("entries[{k}]");
        if e.idx.len() != doc.degree {
            return Err(Error::malformed(format!("{at}.idx"), format!("length {} for degree {}", e.idx.len(), doc.degree)));
        }
        let idx = zero_based(&e.idx, doc.dim, &at)?;
        let v = rational(&e.num, &e.den, &at)?;
        if !t.get(&idx).is_zero() {
            return Err(Error::malformed(at, "repeated index tuple"));
        }
        t.set(&idx, v)?;
    }
    if let Some(s) = &shape {
        if !satisfies_schur_conditions(s, &t) {
            return Err(Error::malformed("entries", format!("components do not have the symmetry of shape {s}")));
        }
    }
    Ok(t)
}

pub fn tensor_to_json(t: &Tensor) -> serde_json::Value {
    let entries = t
        .entries()
        .map(|(idx, x)| {
            let (num, den) = split(x);
            TensorEntry { idx: one_based(idx), num, den }
        })
        .collect();
    let doc = TensorDoc {
        dim: t.dim,
        degree: t.degree,
        variance: variance_name(t.variance),
        shape: t.shape.as_ref().map(|s| s.rows().to_vec()),
        entries,
    };
    serde_json::to_value(doc).expect("serializable")
}

/// Reads a field. Entries may be given at any column ordering and are folded onto the
/// column-strict tuples; conflicting duplicates and fields outside the Schur module are
/// rejected.
pub fn field_from_json(text: &str) -> Result<PolyTensorField> {
    let doc: FieldDoc = serde_json::from_str(text)?;
    let mut f = PolyTensorField::zero(doc.n, doc.dim, doc.degree, doc.poly_degree, variance(&doc.variance)?)
        .map_err(|e| Error::malformed("header", e.to_string()))?;
    if let Some(rows) = &doc.shape {
        if rows.as_slice() != f.shape().rows() {
            return Err(Error::malformed("shape", format!("expected {:?} for N={}, degree {}", f.shape().rows(), doc.n, doc.degree)));
        }
    }
    for (k, e) in doc.entries.iter().enumerate() {
        let at = format!("entries[{k}]");
        if e.idx.len() != doc.degree {
            return Err(Error::malformed(format!("{at}.idx"), format!("length {} for degree {}", e.idx.len(), doc.degree)));
        }
        if e.exp.len() != doc.dim || e.exp.iter().sum::<u32>() as usize != doc.poly_degree {
            return Err(Error::malformed(format!("{at}.exp"), format!("need {} exponents summing to {}", doc.dim, doc.poly_degree)));
        }
        let idx = zero_based(&e.idx, doc.dim, &at)?;
        let v = rational(&e.num, &e.den, &at)?;
        let old = f.get(&idx, &e.exp);
        if !old.is_zero() && old != v {
            return Err(Error::malformed(at, format!("conflicts with an earlier entry (value {old})")));
        }
        f.set_entry(&idx, &e.exp, v).map_err(|err| Error::malformed(format!("{at}.idx"), err.to_string()))?;
    }
    if !f.is_in_schur_module() {
        return Err(Error::malformed("entries", format!("field is not fixed by the Young projector of {}", f.shape())));
    }
    Ok(f)
}

/// Writes the column-strict entries of a field, in storage order.
pub fn field_to_json(f: &PolyTensorField) -> serde_json::Value {
    let entries = f
        .entries()
        .map(|((idx, exp), x)| {
            let (num, den) = split(x);
            FieldEntry { idx: one_based(idx), exp: exp.clone(), num, den }
        })
        .collect();
    let doc = FieldDoc {
        n: f.n,
        dim: f.dim,
        degree: f.degree,
        poly_degree: f.poly_degree,
        variance: variance_name(f.variance),
        shape: Some(f.shape().rows().to_vec()),
        entries,
    };
    serde_json::to_value(doc).expect("serializable")
}

pub fn multiform_from_json(text: &str) -> Result<Multiform> {
    let doc: MultiformDoc = serde_json::from_str(text)?;
    let mut w = Multiform::zero(doc.n, doc.dim, doc.degrees.clone()).map_err(|e| Error::malformed("header", e.to_string()))?;
    for (k, e) in doc.entries.iter().enumerate() {
        let at = format!("entries[{k}]");
        if e.slots.len() != doc.degrees.len() {
            return Err(Error::malformed(format!("{at}.slots"), format!("{} slots, expected {}", e.slots.len(), doc.degrees.len())));
        }
        let slots = e
            .slots
            .iter()
            .enumerate()
            .map(|(s, set)| zero_based(set, doc.dim, &format!("{at}.slots[{s}]")))
            .collect::<Result<Vec<_>>>()?;
        if e.exp.len() != doc.dim {
            return Err(Error::malformed(format!("{at}.exp"), format!("need {} exponents", doc.dim)));
        }
        let v = rational(&e.num, &e.den, &at)?;
        w.add_term(&slots, &e.exp, &v).map_err(|err| Error::malformed(at, err.to_string()))?;
    }
    Ok(w)
}

pub fn multiform_to_json(w: &Multiform) -> serde_json::Value {
    let entries = w
        .entries()
        .map(|((slots, exp), x)| {
            let (num, den) = split(x);
            MultiformEntry { slots: slots.iter().map(|s| one_based(s)).collect(), exp: exp.clone(), num, den }
        })
        .collect();
    let doc = MultiformDoc { n: w.n, dim: w.dim, degrees: w.degrees.clone(), entries };
    serde_json::to_value(doc).expect("serializable")
}

pub fn table_to_json(t: &CohomologyTable) -> serde_json::Value {
    serde_json::to_value(t).expect("serializable")
}
