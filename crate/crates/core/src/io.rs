//! JSON and CSV encodings for matrices.
//!
//! JSON: `{"rows": r, "cols": c, "entries": [["3","2"], ["1","1"]]}` with
//! decimal-string entries. Plain JSON integers are also accepted on input.
//! CSV: one matrix row per line, comma-separated decimal values.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Serde adapter writing a `BigInt` as a decimal string.
pub mod decimal {
    use super::*;

    pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        DecimalOrInt::deserialize(d)?
            .into_bigint()
            .map_err(de::Error::custom)
    }
}

/// Serde adapter for an optional `BigInt` as a decimal string or null.
pub mod decimal_opt {
    use super::*;

    pub fn serialize<S: Serializer>(
        value: &Option<BigInt>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_str(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<BigInt>, D::Error> {
        Option::<DecimalOrInt>::deserialize(d)?
            .map(DecimalOrInt::into_bigint)
            .transpose()
            .map_err(de::Error::custom)
    }
}

/// Serde adapter for a pair of `BigInt`s as a two-element array of decimal strings.
pub mod decimal_pair {
    use super::*;

    pub fn serialize<S: Serializer>(
        value: &(BigInt, BigInt),
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        [value.0.to_string(), value.1.to_string()].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<(BigInt, BigInt), D::Error> {
        let [a, b] = <[DecimalOrInt; 2]>::deserialize(d)?;
        Ok((
            a.into_bigint().map_err(de::Error::custom)?,
            b.into_bigint().map_err(de::Error::custom)?,
        ))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DecimalOrInt {
    Str(String),
    Int(i64),
}

impl DecimalOrInt {
    fn into_bigint(self) -> std::result::Result<BigInt, String> {
        match self {
            DecimalOrInt::Str(s) => {
                BigInt::from_str(s.trim()).map_err(|_| format!("not a decimal integer: {s:?}"))
            }
            DecimalOrInt::Int(i) => Ok(BigInt::from(i)),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<DecimalCell>>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct DecimalCell(#[serde(with = "decimal")] BigInt);

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows(),
            cols: self.cols(),
            entries: self
                .row_slices()
                .map(|r| r.iter().cloned().map(DecimalCell).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        let rows = repr.entries.len();
        let m = Matrix::from_rows(repr.entries.into_iter().map(|r| r.into_iter().map(|c| c.0)))
            .map_err(de::Error::custom)?;
        if rows != repr.rows || m.cols() != repr.cols {
            return Err(de::Error::custom(format!(
                "declared {}x{} but entries are {}x{}",
                repr.rows,
                repr.cols,
                m.rows(),
                m.cols()
            )));
        }
        Ok(m)
    }
}

pub fn matrix_to_json(m: &Matrix) -> String {
    serde_json::to_string(m).expect("matrix serialization is infallible")
}

pub fn matrix_from_json(text: &str) -> Result<Matrix> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// CSV rendering without a trailing newline.
pub fn matrix_to_csv(m: &Matrix) -> String {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for row in m.row_slices() {
        writer
            .write_record(row.iter().map(ToString::to_string))
            .expect("writing to a Vec cannot fail");
    }
    let bytes = writer.into_inner().expect("writing to a Vec cannot fail");
    let mut text = String::from_utf8(bytes).expect("decimal digits are UTF-8");
    if text.ends_with('\n') {
        text.pop();
    }
    text
}

pub fn matrix_from_csv(text: &str) -> Result<Matrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let row = record
            .iter()
            .enumerate()
            .map(|(c, field)| {
                BigInt::from_str(field).map_err(|_| {
                    Error::Parse(format!(
                        "entry ({},{}) is not an integer: {field:?}",
                        r + 1,
                        c + 1
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Matrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{build_a, build_s};
    use proptest::prelude::*;

    #[test]
    fn json_layout_uses_decimal_strings() {
        let json = matrix_to_json(&build_a(2).unwrap());
        assert_eq!(
            json,
            r#"{"rows":2,"cols":2,"entries":[["3","2"],["-1","1"]]}"#
        );
    }

    #[test]
    fn json_accepts_plain_integers_and_big_strings() {
        let m = matrix_from_json(
            r#"{"rows":1,"cols":2,"entries":[[7,"123456789012345678901234567890"]]}"#,
        )
        .unwrap();
        assert_eq!(
            m.get(1, 2).unwrap().to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn json_rejects_inconsistent_shape() {
        assert!(matrix_from_json(r#"{"rows":2,"cols":1,"entries":[["1"]]}"#).is_err());
        assert!(matrix_from_json(r#"{"rows":2,"cols":2,"entries":[["1","2"],["3"]]}"#).is_err());
        assert!(matrix_from_json(r#"{"rows":1,"cols":1,"entries":[["x"]]}"#).is_err());
    }

    #[test]
    fn csv_layout() {
        assert_eq!(matrix_to_csv(&build_s(3).unwrap()), "1,1,1\n-1,1,1\n1,-1,1");
        assert_eq!(
            matrix_from_csv("1, 1, 1\n-1,1,1\n1,-1,1\n").unwrap(),
            build_s(3).unwrap()
        );
        assert!(matrix_from_csv("1,2\n3,x").is_err());
    }

    proptest! {
        #[test]
        fn encodings_round_trip(
            rows in 1usize..5,
            cols in 1usize..5,
            seed in proptest::collection::vec(any::<i64>(), 16),
        ) {
            let entries: Vec<BigInt> = (0..rows * cols)
                .map(|i| BigInt::from(seed[i % 16]) * BigInt::from(seed[(i + 1) % 16]))
                .collect();
            let m = Matrix::new(rows, cols, entries).unwrap();
            prop_assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m.clone());
            prop_assert_eq!(matrix_from_csv(&matrix_to_csv(&m)).unwrap(), m);
        }
    }
}
