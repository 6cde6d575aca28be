//! JSON text formats for matrices, R-matrices and Thoma parameters.
//!
//! A matrix is `{"rows": r, "cols": c, "entries": [[{"re": "p/q", "im": "p/q"}, …], …]}`
//! with `im` optional. An R-matrix file adds a top-level `"d"`. Thoma
//! parameters are `{"a": [..], "b": [..]}` with integer or `"p/q"` entries.
//! Every error carries the byte offset at which parsing stopped.

use std::fmt;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::linalg::Matrix;
use crate::rmatrix::RMatrix;
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};
use crate::thoma::ThomaParams;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for FormatError {}

impl FormatError {
    fn from_json(text: &str, err: serde_json::Error) -> Self {
        let line_start: usize = text.split_inclusive('\n').take(err.line().saturating_sub(1)).map(str::len).sum();
        let offset = (line_start + err.column().saturating_sub(1)).min(text.len());
        // serde_json appends its own "at line L column C"; the offset replaces it.
        let message = err.to_string();
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        FormatError { offset, message }
    }

    fn at_end(text: &str, message: String) -> Self {
        FormatError { offset: text.trim_end().len(), message }
    }
}

/// A `"p/q"` string, parsed as soon as the string token is read so that
/// errors point at it.
struct RationalRepr(Rational);

impl<'de> Deserialize<'de> for RationalRepr {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        parse_rational(&s).map(RationalRepr).map_err(serde::de::Error::custom)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScalar {
    re: RationalRepr,
    #[serde(default)]
    im: Option<RationalRepr>,
}

#[derive(Deserialize)]
#[serde(from = "RawScalar")]
struct ScalarRepr(Scalar);

impl From<RawScalar> for ScalarRepr {
    fn from(raw: RawScalar) -> Self {
        let im = raw.im.map_or_else(|| Rational::from_integer(0.into()), |r| r.0);
        ScalarRepr(Scalar::new(raw.re.0, im))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    #[serde(default)]
    d: Option<usize>,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<ScalarRepr>>,
}

#[derive(Deserialize)]
#[serde(try_from = "RawMatrix")]
struct MatrixRepr {
    d: Option<usize>,
    matrix: Matrix,
}

impl TryFrom<RawMatrix> for MatrixRepr {
    type Error = String;

    fn try_from(raw: RawMatrix) -> Result<Self, String> {
        if raw.entries.len() != raw.rows {
            return Err(format!("expected {} rows of entries, found {}", raw.rows, raw.entries.len()));
        }
        if let Some((i, row)) = raw.entries.iter().enumerate().find(|(_, r)| r.len() != raw.cols) {
            return Err(format!("row {i} has {} entries, expected {}", row.len(), raw.cols));
        }
        let entries = raw.entries.into_iter().flatten().map(|s| s.0).collect();
        let matrix = Matrix::new(raw.rows, raw.cols, entries).map_err(|e| e.to_string())?;
        Ok(MatrixRepr { d: raw.d, matrix })
    }
}

fn parse_repr(text: &str) -> Result<MatrixRepr, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::from_json(text, e))
}

pub fn parse_matrix(text: &str) -> Result<Matrix, FormatError> {
    Ok(parse_repr(text)?.matrix)
}

/// Parses an R-matrix file and validates it. A missing `"d"` is inferred
/// from the size when `rows` is a perfect square.
pub fn parse_rmatrix(text: &str) -> Result<RMatrix, RMatrixFileError> {
    let repr = parse_repr(text).map_err(RMatrixFileError::Format)?;
    let rows = repr.matrix.rows();
    let d = match repr.d {
        Some(d) => d,
        None => match (1..=rows).find(|d| d * d >= rows) {
            Some(d) if d * d == rows => d,
            _ => return Err(RMatrixFileError::Format(FormatError::at_end(text, format!("cannot infer d from {rows} rows")))),
        },
    };
    RMatrix::validate(d, repr.matrix).map_err(RMatrixFileError::Invalid)
}

#[derive(Debug)]
pub enum RMatrixFileError {
    Format(FormatError),
    Invalid(crate::rmatrix::RMatrixError),
}

impl fmt::Display for RMatrixFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RMatrixFileError::Format(e) => e.fmt(f),
            RMatrixFileError::Invalid(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for RMatrixFileError {}

fn scalar_json(s: &Scalar) -> Value {
    json!({ "re": format_rational(&s.re), "im": format_rational(&s.im) })
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let entries: Vec<Value> = (0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(scalar_json).collect())).collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

pub fn rmatrix_to_json(r: &RMatrix) -> Value {
    let mut v = matrix_to_json(r.matrix());
    v["d"] = json!(r.d());
    v
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawEntry {
    Int(u64),
    Text(String),
}

/// A parameter given as an integer or a `"p/q"` string.
struct ParamEntry(Rational);

impl<'de> Deserialize<'de> for ParamEntry {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        match RawEntry::deserialize(de)? {
            RawEntry::Int(n) => Ok(ParamEntry(Rational::from_integer(n.into()))),
            RawEntry::Text(s) => parse_rational(&s).map(ParamEntry).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    #[serde(default)]
    a: Vec<ParamEntry>,
    #[serde(default)]
    b: Vec<ParamEntry>,
}

#[derive(Deserialize)]
#[serde(try_from = "RawParams")]
struct ParamsRepr(ThomaParams);

impl TryFrom<RawParams> for ParamsRepr {
    type Error = String;

    fn try_from(raw: RawParams) -> Result<Self, String> {
        let conv = |v: Vec<ParamEntry>| -> Vec<Rational> { v.into_iter().map(|e| e.0).collect() };
        ThomaParams::from_rationals(&conv(raw.a), &conv(raw.b)).map(ParamsRepr).map_err(|e| e.to_string())
    }
}

pub fn parse_params(text: &str) -> Result<ThomaParams, FormatError> {
    serde_json::from_str::<ParamsRepr>(text).map(|p| p.0).map_err(|e| FormatError::from_json(text, e))
}

pub fn params_to_json(p: &ThomaParams) -> Value {
    json!({ "a": p.a(), "b": p.b(), "d": p.d() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn matrix_round_trip() {
        let m = Matrix::from_fn(2, 3, |i, j| Scalar::new(rational(i as i64 - 1, 3), rational(j as i64, 2)));
        let text = matrix_to_json(&m).to_string();
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn rejects_zero_denominator_with_offset() {
        let text = r#"{"rows":1,"cols":1,"entries":[[{"re":"1/0","im":"0"}]]}"#;
        let err = parse_matrix(text).unwrap_err();
        assert!(err.message.contains("zero denominator"), "{err}");
        assert!(err.offset > 30 && err.offset <= text.len(), "{err}");
    }

    #[test]
    fn syntax_error_offset() {
        let text = "{\"rows\": 1,\n \"cols\": x}";
        let err = parse_matrix(text).unwrap_err();
        assert_eq!(&text[err.offset..err.offset + 1], "x");
    }

    #[test]
    fn shape_mismatch() {
        let text = r#"{"rows":2,"cols":1,"entries":[[{"re":"1"}]]}"#;
        assert!(parse_matrix(text).unwrap_err().message.contains("rows"));
    }

    #[test]
    fn rmatrix_file_is_validated() {
        let flip = RMatrix::flip(2);
        let text = rmatrix_to_json(&flip).to_string();
        assert_eq!(parse_rmatrix(&text).unwrap(), flip);
        let bad = Matrix::from_ints(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, -1]]);
        let text = matrix_to_json(&bad).to_string();
        assert!(matches!(parse_rmatrix(&text), Err(RMatrixFileError::Invalid(_))));
    }

    #[test]
    fn params_json() {
        let p = parse_params(r#"{"a": [1], "b": ["2", 1]}"#).unwrap();
        assert_eq!(p.a(), &[1]);
        assert_eq!(p.b(), &[2, 1]);
        assert!(parse_params(r#"{"b": ["1/2"]}"#).is_err());
    }
}
