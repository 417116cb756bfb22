//! JSON and text formats shared by the command-line tool.
//!
//! A form file is `{"ring": "laurent" | "rational" | "gaussian",
//! "matrix": [[string, ...], ...]}` with entries in the text form of the
//! ring. Points of evaluation are written `A` (symbolic), `p`, `p/q`,
//! Gaussian rationals such as `1/2+3/4i`, or `cis(t)` for the double
//! `e^(i t)`.

use num_complex::Complex64;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::matrix::Matrix;
use crate::rep::{form_inverse, FormMatrix, RepError};
use crate::ring::{parse_rational, GaussianRational, LaurentPoly, Ring, RingError, RingValue};
use crate::tl::TlElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("cannot read {0}")]
    Io(String),
    #[error("malformed form file: {0}")]
    Shape(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Reads and validates a form file; the form must be square and invertible.
pub fn parse_form(text: &str) -> Result<FormMatrix, FormatError> {
    let value: Value = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    let ring = value
        .get("ring")
        .and_then(Value::as_str)
        .ok_or_else(|| shape("missing \"ring\""))?;
    let rows = value
        .get("matrix")
        .and_then(Value::as_array)
        .ok_or_else(|| shape("missing \"matrix\""))?;
    let cells: Vec<Vec<&str>> = rows
        .iter()
        .map(|r| {
            let r = r.as_array().ok_or_else(|| shape("rows must be arrays"))?;
            r.iter()
                .map(|c| c.as_str().ok_or_else(|| shape("entries must be strings")))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let form = match ring {
        "laurent" => FormMatrix::Laurent(build(&cells, LaurentPoly::parse)?),
        "rational" => FormMatrix::Rational(build(&cells, parse_rational)?),
        "gaussian" => FormMatrix::Gaussian(build(&cells, GaussianRational::parse)?),
        other => return Err(shape(&format!("unknown ring {other:?}"))),
    };
    form.inverse()?;
    Ok(form)
}

fn shape(msg: &str) -> FormatError {
    FormatError::Shape(msg.to_string())
}

fn build<R: Ring>(
    cells: &[Vec<&str>],
    parse: impl Fn(&str) -> Result<R, RingError>,
) -> Result<Matrix<R>, FormatError> {
    let n = cells.len();
    if n == 0 {
        return Err(shape("empty matrix"));
    }
    if cells.iter().any(|r| r.len() != n) {
        return Err(shape("matrix must be square"));
    }
    let rows = cells
        .iter()
        .map(|r| r.iter().map(|c| parse(c)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    Ok(Matrix::from_rows(rows).expect("checked square"))
}

pub fn load_form(path: &std::path::Path) -> Result<FormMatrix, FormatError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FormatError::Io(format!("{}: {e}", path.display())))?;
    parse_form(&text)
}

pub fn form_to_json(form: &FormMatrix) -> Value {
    json!({"ring": form.tag().to_string(), "matrix": form.to_strings()})
}

/// Parses a point of evaluation.
pub fn parse_point(input: &str) -> Result<RingValue, RingError> {
    let s = input.trim();
    if s == "A" {
        return Ok(RingValue::symbolic_a());
    }
    if let Some(arg) = s.strip_prefix("cis(").and_then(|r| r.strip_suffix(')')) {
        let t: f64 = arg.trim().parse().map_err(|_| RingError::Parse {
            kind: "angle",
            input: input.to_string(),
        })?;
        return Ok(RingValue::Complex(Complex64::from_polar(1.0, t)));
    }
    if s.contains('i') {
        return Ok(RingValue::Gaussian(GaussianRational::parse(s)?));
    }
    Ok(RingValue::Rational(parse_rational(s)?))
}

/// A ring value as JSON: Laurent polynomials as exponent maps, complex
/// doubles as `[re, im]`, everything else as text.
pub fn value_to_json(v: &RingValue) -> Value {
    match v {
        RingValue::Laurent(p) => p.to_json(),
        RingValue::Complex(z) => json!([z.re, z.im]),
        other => Value::String(other.to_string()),
    }
}

/// Matrix entries as JSON via [`value_to_json`].
pub fn matrix_to_json<R: Ring>(m: &Matrix<R>, wrap: impl Fn(&R) -> RingValue) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(|x| value_to_json(&wrap(x))).collect()))
            .collect(),
    )
}

/// A TL element as `{"source", "target", "terms": [{"matching", "coefficient"}]}`.
pub fn tl_to_json(x: &TlElement<LaurentPoly>) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .map(|(m, c)| json!({"matching": m.to_string(), "coefficient": c.to_json()}))
        .collect();
    json!({"source": x.source(), "target": x.target(), "terms": terms})
}

/// Inverse of a form as JSON text entries, used by `repgen`.
pub fn inverse_to_json(form: &FormMatrix) -> Result<Value, FormatError> {
    let inv = match form {
        FormMatrix::Laurent(m) => FormMatrix::Laurent(form_inverse(m)?),
        FormMatrix::Rational(m) => FormMatrix::Rational(form_inverse(m)?),
        FormMatrix::Gaussian(m) => FormMatrix::Gaussian(form_inverse(m)?),
    };
    Ok(Value::Array(
        inv.to_strings()
            .into_iter()
            .map(|r| Value::Array(r.into_iter().map(Value::String).collect()))
            .collect(),
    ))
}

/// Sorted map from exponent to coefficient, as `{"2": -1, "-2": -1}`.
pub fn poly_map(p: &LaurentPoly) -> Map<String, Value> {
    match p.to_json() {
        Value::Object(m) => m,
        _ => unreachable!("polynomials serialize to objects"),
    }
}
