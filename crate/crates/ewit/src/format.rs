//! Matrix JSON: `{"dimA":3,"dimB":3,"entries":[[[re,im],...],...]}` with
//! row-major composite indices.

use std::fs;
use std::path::Path;

use ewit_core::{Operator, ProductVector, C64};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl From<&Operator> for MatrixJson {
    fn from(op: &Operator) -> Self {
        Self {
            dim_a: op.dim_a(),
            dim_b: op.dim_b(),
            entries: op.rows().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect(),
        }
    }
}

impl TryFrom<&MatrixJson> for Operator {
    type Error = CliError;

    fn try_from(m: &MatrixJson) -> Result<Self> {
        let rows: Vec<Vec<C64>> = m
            .entries
            .iter()
            .map(|row| row.iter().map(|&[re, im]| C64::new(re, im)).collect())
            .collect();
        Ok(Operator::from_rows(m.dim_a, m.dim_b, &rows)?)
    }
}

/// Local vectors as `[[re, im], ...]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductVectorJson {
    pub e: Vec<[f64; 2]>,
    pub f: Vec<[f64; 2]>,
}

impl From<&ProductVector> for ProductVectorJson {
    fn from(v: &ProductVector) -> Self {
        let pairs = |x: &[C64]| x.iter().map(|z| [z.re, z.im]).collect();
        Self {
            e: pairs(&v.e),
            f: pairs(&v.f),
        }
    }
}

/// Validates a parsed JSON value against the matrix schema, reporting the
/// offending field path. Hermiticity is left to consumers.
pub fn operator_from_value(value: &Value) -> Result<Operator> {
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::schema("$", "expected an object"))?;
    let dim = |key: &str| -> Result<usize> {
        let v = obj
            .get(key)
            .ok_or_else(|| CliError::schema(key, "missing field"))?;
        v.as_u64()
            .filter(|&d| d > 0)
            .map(|d| d as usize)
            .ok_or_else(|| CliError::schema(key, "expected a positive integer"))
    };
    let dim_a = dim("dimA")?;
    let dim_b = dim("dimB")?;
    let side = dim_a * dim_b;

    let rows = obj
        .get("entries")
        .ok_or_else(|| CliError::schema("entries", "missing field"))?
        .as_array()
        .ok_or_else(|| CliError::schema("entries", "expected an array of rows"))?;
    if rows.len() != side {
        return Err(CliError::schema(
            "entries",
            format!("{} rows but dimA·dimB = {side}", rows.len()),
        ));
    }
    let mut entries = Vec::with_capacity(side * side);
    for (r, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| CliError::schema(format!("entries[{r}]"), "expected an array"))?;
        if row.len() != side {
            return Err(CliError::schema(
                format!("entries[{r}]"),
                format!("{} columns but dimA·dimB = {side}", row.len()),
            ));
        }
        for (c, z) in row.iter().enumerate() {
            let field = || format!("entries[{r}][{c}]");
            let pair = z
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| CliError::schema(field(), "expected [re, im]"))?;
            let re = pair[0].as_f64();
            let im = pair[1].as_f64();
            match (re, im) {
                (Some(re), Some(im)) if re.is_finite() && im.is_finite() => entries.push(C64::new(re, im)),
                _ => return Err(CliError::schema(field(), "expected two finite numbers")),
            }
        }
    }
    Ok(Operator::new(dim_a, dim_b, entries)?)
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_owned(),
        source,
    })
}

/// Loads an operator from a matrix JSON file.
pub fn load_matrix(path: &Path) -> Result<Operator> {
    operator_from_value(&read_json(path)?)
}

/// Loads an operator from either a bare matrix file or any JSON object
/// carrying one under `key` (e.g. the `W` field of a witness certificate).
pub fn load_matrix_field(path: &Path, key: &str) -> Result<Operator> {
    let value = read_json(path)?;
    match value.get(key) {
        Some(inner) => operator_from_value(inner).map_err(|e| match e {
            CliError::Schema { field, message } => CliError::schema(format!("{key}.{field}"), message),
            other => other,
        }),
        None => operator_from_value(&value),
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

pub fn save_matrix(path: &Path, op: &Operator) -> Result<()> {
    write_text(path, &to_json_string(&MatrixJson::from(op)))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ewit_core::states::{build_rho, StateParameter};
    use serde_json::json;

    #[test]
    fn round_trip_is_exact() {
        let rho = build_rho(StateParameter::new(0.5).unwrap());
        let text = to_json_string(&MatrixJson::from(&rho));
        let back = operator_from_value(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, rho);
    }

    #[test]
    fn dimension_mismatch_is_a_schema_error() {
        let v = json!({"dimA": 2, "dimB": 2, "entries": [[[1.0, 0.0]]]});
        match operator_from_value(&v) {
            Err(CliError::Schema { field, .. }) => assert_eq!(field, "entries"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_entry_reports_path() {
        let v = json!({"dimA": 1, "dimB": 2, "entries": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], "x"]]});
        match operator_from_value(&v) {
            Err(CliError::Schema { field, .. }) => assert_eq!(field, "entries[1][1]"),
            other => panic!("{other:?}"),
        }
        let v = json!({"dimB": 2, "entries": []});
        assert!(matches!(operator_from_value(&v), Err(CliError::Schema { field, .. }) if field == "dimA"));
    }

    #[test]
    fn non_hermitian_matrices_load() {
        let v = json!({"dimA": 2, "dimB": 1, "entries": [[[0.0, 0.0], [1.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]});
        assert!(operator_from_value(&v).is_ok());
    }
}
