//! JSON input and output formats.

/// Serializes a `BigRational` as the string `"p/q"` (always with a
/// denominator, so zero is `"0/1"`).
pub mod ratio_string {
    use num_rational::BigRational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn to_string(r: &BigRational) -> String {
        format!("{}/{}", r.numer(), r.denom())
    }

    pub fn parse(s: &str) -> Option<BigRational> {
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let n = n.trim().parse().ok()?;
        let d: num_bigint::BigInt = d.trim().parse().ok()?;
        if d == 0.into() {
            return None;
        }
        Some(BigRational::new(n, d))
    }

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).ok_or_else(|| D::Error::custom(format!("invalid rational '{s}'")))
    }
}

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::complex::FreeChainComplex;
use crate::error::{Error, Result};
use crate::group::GroupDescriptor;
use crate::ring::{GroupRingElement, GroupRingMatrix};
use crate::scalar::{FieldDescriptor, Scalar};

/// `{"type":"Fp","p":7}` or `{"type":"Q"}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum FieldJson {
    Fp { p: u64 },
    Q,
}

/// `{"type":"Zd","d":2}`, `{"type":"Dinf"}` or `{"type":"Heis"}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum GroupJson {
    Zd { d: usize },
    Dinf,
    Heis,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    /// An integer over `F_p`, a string `"n/d"` over `Q`.
    pub coeff: Value,
    pub g: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryJson {
    pub row: usize,
    pub col: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub group: GroupJson,
    pub field: FieldJson,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<EntryJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub group: GroupJson,
    pub field: FieldJson,
    pub ranks: Vec<usize>,
    pub differentials: Vec<MatrixJson>,
}

fn schema(path: impl Into<String>, message: impl std::fmt::Display) -> Error {
    Error::Schema { path: path.into(), message: message.to_string() }
}

fn join(prefix: &str, field: &str) -> String {
    if prefix.is_empty() {
        field.to_string()
    } else {
        format!("{prefix}.{field}")
    }
}

/// Deserializes `text` into `T`, reporting failures with their JSON path.
pub fn from_str_with_path<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        schema(if path == "." { "$".to_string() } else { path }, e.into_inner())
    })
}

impl FieldJson {
    pub fn from_descriptor(field: FieldDescriptor) -> Self {
        match field.modulus() {
            Some(p) => FieldJson::Fp { p: p as u64 },
            None => FieldJson::Q,
        }
    }

    pub fn to_descriptor(self, path: &str) -> Result<FieldDescriptor> {
        match self {
            FieldJson::Fp { p } => FieldDescriptor::prime(p).map_err(|e| schema(join(path, "p"), e)),
            FieldJson::Q => Ok(FieldDescriptor::rationals()),
        }
    }
}

impl GroupJson {
    pub fn from_descriptor(group: GroupDescriptor) -> Self {
        match group {
            GroupDescriptor::Zd(d) => GroupJson::Zd { d },
            GroupDescriptor::DihedralInfinite => GroupJson::Dinf,
            GroupDescriptor::Heisenberg => GroupJson::Heis,
        }
    }

    pub fn to_descriptor(self, path: &str) -> Result<GroupDescriptor> {
        match self {
            GroupJson::Zd { d } => GroupDescriptor::zd(d).map_err(|e| schema(join(path, "d"), e)),
            GroupJson::Dinf => Ok(GroupDescriptor::DihedralInfinite),
            GroupJson::Heis => Ok(GroupDescriptor::Heisenberg),
        }
    }
}

/// The JSON form of a scalar: the residue over `F_p`, `"n/d"` over `Q`.
pub fn scalar_to_json(s: &Scalar) -> Value {
    match (s.residue(), s.as_rational()) {
        (Some(v), _) => Value::from(v),
        (None, Some(q)) => Value::from(ratio_string::to_string(q)),
        (None, None) => unreachable!("a scalar is a residue or a rational"),
    }
}

pub fn scalar_from_json(value: &Value, field: FieldDescriptor, path: &str) -> Result<Scalar> {
    match (field.modulus(), value) {
        (Some(_), Value::Number(n)) => match n.as_i64() {
            Some(v) => Ok(Scalar::from_i64(field, v)),
            None => Err(schema(path, format!("expected an integer coefficient, found {n}"))),
        },
        (Some(p), other) => Err(schema(path, format!("coefficients over F_{p} are integers, found {other}"))),
        (None, Value::String(s)) => ratio_string::parse(s)
            .map(Scalar::rational)
            .ok_or_else(|| schema(path, format!("invalid rational '{s}'"))),
        (None, Value::Number(n)) => match n.as_i64() {
            Some(v) => Ok(Scalar::from_i64(field, v)),
            None => Err(schema(path, format!("expected an integer or \"n/d\", found {n}"))),
        },
        (None, other) => Err(schema(path, format!("rational coefficients are strings \"n/d\", found {other}"))),
    }
}

impl MatrixJson {
    pub fn from_matrix(m: &GroupRingMatrix) -> Self {
        MatrixJson {
            group: GroupJson::from_descriptor(m.group()),
            field: FieldJson::from_descriptor(m.field()),
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .entries()
                .map(|(row, col, e)| EntryJson {
                    row,
                    col,
                    terms: e.terms().map(|(g, c)| TermJson { coeff: scalar_to_json(c), g: g.coordinates() }).collect(),
                })
                .collect(),
        }
    }

    /// Validates coordinates, coefficients and positions; `path` prefixes
    /// every reported location.
    pub fn to_matrix(&self, path: &str) -> Result<GroupRingMatrix> {
        let group = self.group.to_descriptor(&join(path, "group"))?;
        let field = self.field.to_descriptor(&join(path, "field"))?;
        let mut m = GroupRingMatrix::zeros(field, group, self.rows, self.cols);
        let mut seen = std::collections::BTreeSet::new();
        for (k, entry) in self.entries.iter().enumerate() {
            let at = join(path, &format!("entries[{k}]"));
            if entry.row >= self.rows {
                return Err(schema(join(&at, "row"), format!("row {} out of range for {} rows", entry.row, self.rows)));
            }
            if entry.col >= self.cols {
                return Err(schema(join(&at, "col"), format!("column {} out of range for {} columns", entry.col, self.cols)));
            }
            if !seen.insert((entry.row, entry.col)) {
                return Err(schema(at, format!("duplicate entry ({}, {})", entry.row, entry.col)));
            }
            let mut element = GroupRingElement::zero(field, group);
            for (t, term) in entry.terms.iter().enumerate() {
                let term_at = join(&at, &format!("terms[{t}]"));
                let g = group.element(&term.g).map_err(|e| schema(join(&term_at, "g"), e))?;
                let c = scalar_from_json(&term.coeff, field, &join(&term_at, "coeff"))?;
                element.add_term(g, c)?;
            }
            m.set(entry.row, entry.col, element)?;
        }
        Ok(m)
    }
}

impl ComplexJson {
    pub fn from_complex(c: &FreeChainComplex) -> Self {
        ComplexJson {
            group: GroupJson::from_descriptor(c.group()),
            field: FieldJson::from_descriptor(c.field()),
            ranks: c.ranks().to_vec(),
            differentials: c.differentials().iter().map(MatrixJson::from_matrix).collect(),
        }
    }

    pub fn to_complex(&self) -> Result<FreeChainComplex> {
        let group = self.group.to_descriptor("group")?;
        let field = self.field.to_descriptor("field")?;
        if self.ranks.is_empty() {
            return Err(schema("ranks", "at least one rank is required"));
        }
        if self.differentials.len() + 1 != self.ranks.len() {
            return Err(schema(
                "differentials",
                format!("{} ranks need {} differentials, found {}", self.ranks.len(), self.ranks.len() - 1, self.differentials.len()),
            ));
        }
        let mut diffs = Vec::new();
        for (k, d) in self.differentials.iter().enumerate() {
            let at = format!("differentials[{k}]");
            if d.group != self.group {
                return Err(schema(join(&at, "group"), "differential group differs from the complex group"));
            }
            if d.field != self.field {
                return Err(schema(join(&at, "field"), "differential field differs from the complex field"));
            }
            if (d.rows, d.cols) != (self.ranks[k + 1], self.ranks[k]) {
                return Err(schema(
                    at,
                    format!("c_{} must be {}x{}, found {}x{}", k + 1, self.ranks[k + 1], self.ranks[k], d.rows, d.cols),
                ));
            }
            diffs.push(d.to_matrix(&at)?);
        }
        FreeChainComplex::new(field, group, self.ranks.clone(), diffs)
    }
}

pub fn parse_matrix(text: &str) -> Result<GroupRingMatrix> {
    from_str_with_path::<MatrixJson>(text)?.to_matrix("")
}

pub fn parse_complex(text: &str) -> Result<FreeChainComplex> {
    from_str_with_path::<ComplexJson>(text)?.to_complex()
}

pub fn matrix_to_string(m: &GroupRingMatrix) -> String {
    serde_json::to_string_pretty(&MatrixJson::from_matrix(m)).expect("plain data serializes")
}

pub fn complex_to_string(c: &FreeChainComplex) -> String {
    serde_json::to_string_pretty(&ComplexJson::from_complex(c)).expect("plain data serializes")
}

#[cfg(test)]
mod tests;
