//! Text and JSON forms of series, partitions and levels.

use std::fmt;

use ldt::algebra::text::Named;
use ldt::algebra::{RatFunc, Series, EXACT};
use ldt::partitions::Partition;
use serde_json::{json, Value};

use crate::expr::{parse_ratfunc_with, ParseError};

/// Names of the three variables in the solver frame and for TQFT output.
pub const TQFT_NAMES: [&str; 3] = ["s", "t1", "t2"];
/// Names for the general vertex frame `(s1, s2, s3)`.
pub const GENERAL_NAMES: [&str; 3] = ["s1", "s2", "s3"];

#[derive(Debug)]
pub enum FormatError {
    Parse(ParseError),
    Shape(String),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Parse(e) => write!(f, "{}", e),
            FormatError::Shape(m) => write!(f, "{}", m),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<ParseError> for FormatError {
    fn from(e: ParseError) -> Self {
        FormatError::Parse(e)
    }
}

fn shape(m: &str) -> FormatError {
    FormatError::Shape(m.to_string())
}

pub fn ratfunc_text(r: &RatFunc, names: [&str; 3]) -> String {
    Named(r, names).to_string()
}

/// `q^k*(c) + …; O(q^n)`, skipping zero coefficients.
pub fn series_text(s: &Series, names: [&str; 3]) -> String {
    let mut out = String::new();
    for (i, c) in s.stored().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&format!("q^{}*({})", s.valuation() + i as i64, ratfunc_text(c, names)));
    }
    if out.is_empty() {
        out.push('0');
    }
    if !s.is_exact() {
        out.push_str(&format!("; O(q^{})", s.truncation() + 1));
    }
    out
}

/// `{"valuation", "truncation", "coefficients"}` with dense coefficient strings;
/// an exact series has `"truncation": null`.
pub fn series_json(s: &Series, names: [&str; 3]) -> Value {
    let coeffs: Vec<Value> = s
        .stored()
        .iter()
        .map(|c| Value::String(ratfunc_text(c, names)))
        .collect();
    let trunc = if s.is_exact() {
        Value::Null
    } else {
        json!(s.truncation())
    };
    json!({
        "valuation": s.valuation(),
        "truncation": trunc,
        "coefficients": coeffs,
    })
}

pub fn series_from_json(v: &Value, names: [&str; 3]) -> Result<Series, FormatError> {
    let val = v
        .get("valuation")
        .and_then(Value::as_i64)
        .ok_or_else(|| shape("missing integer \"valuation\""))?;
    let trunc = match v.get("truncation") {
        Some(Value::Null) => EXACT,
        Some(t) => t.as_i64().ok_or_else(|| shape("\"truncation\" must be an integer or null"))?,
        None => return Err(shape("missing \"truncation\"")),
    };
    let coeffs = v
        .get("coefficients")
        .and_then(Value::as_array)
        .ok_or_else(|| shape("missing array \"coefficients\""))?
        .iter()
        .map(|c| {
            let s = c.as_str().ok_or_else(|| shape("coefficients must be strings"))?;
            Ok(parse_ratfunc_with(s, names)?)
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(Series::new(val, coeffs, trunc))
}

/// `"2,1"`; the empty string (or `"0"`) is the empty partition.
pub fn parse_partition(s: &str) -> Result<Partition, String> {
    let t = s.trim();
    if t.is_empty() || t == "0" || t == "()" {
        return Ok(Partition::empty());
    }
    let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
    let parts = t
        .split(',')
        .map(|p| {
            let p = p.trim();
            match p.parse::<u32>() {
                Ok(0) => Err(format!("zero part in partition {:?}", s)),
                Ok(n) => Ok(n),
                Err(_) => Err(format!("bad part {:?} in partition {:?}", p, s)),
            }
        })
        .collect::<Result<Vec<u32>, String>>()?;
    Ok(Partition::new(parts))
}

/// `"λ1;λ2;…"`; the empty string is no insertions.
pub fn parse_insertions(s: &str) -> Result<Vec<Partition>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(parse_partition).collect()
}

/// `"k1,k2"`.
pub fn parse_level(s: &str) -> Result<(i64, i64), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(format!("level must be k1,k2, got {:?}", s));
    }
    let k = |p: &str| p.parse::<i64>().map_err(|_| format!("bad level entry {:?}", p));
    Ok((k(parts[0])?, k(parts[1])?))
}

pub fn partition_json(p: &Partition) -> Value {
    json!(p.parts())
}
