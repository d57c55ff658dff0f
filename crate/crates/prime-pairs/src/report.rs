//! Deterministic output formatting: significant-figure rendering, JSON with
//! sorted keys, fixed 5-decimal truncation for the variance table, and
//! RFC 4180 CSV.  Everything here is byte-stable across runs and platforms
//! so downstream diffs are meaningful.

use crate::{Error, Result};
use serde::Serialize;
use serde_json::Value;
use std::fmt::Write as _;

/// Render `x` to `digits` significant figures: plain decimal notation for
/// magnitudes in [1e-4, 1e15), scientific otherwise, trailing zeros trimmed.
pub fn format_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("float scientific form always has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let neg = mantissa.starts_with('-');
    // The mantissa already carries exactly `digits` correctly rounded digits;
    // everything below is exact string surgery, so no double rounding.
    let d: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let body = if (-4..15).contains(&exp) {
        if exp >= 0 {
            let ip = exp as usize + 1;
            if ip >= d.len() {
                format!("{d}{}", "0".repeat(ip - d.len()))
            } else {
                trim_trailing_zeros(&format!("{}.{}", &d[..ip], &d[ip..]))
            }
        } else {
            trim_trailing_zeros(&format!("0.{}{}", "0".repeat((-exp - 1) as usize), d))
        }
    } else {
        let m = if d.len() > 1 {
            trim_trailing_zeros(&format!("{}.{}", &d[..1], &d[1..]))
        } else {
            d
        };
        format!("{m}e{exp}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_trailing_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

/// `x` truncated (toward zero) to exactly five decimal places, plus a flag
/// raised when the sixth decimal puts the value within 1e-6 of a truncation
/// boundary — i.e. when the printed table entry is ill-conditioned.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Truncated {
    pub value: f64,
    pub text: String,
    pub boundary: bool,
}

pub fn truncate_5dp(x: f64) -> Truncated {
    let scaled = x.abs() * 1e5;
    let whole = scaled.floor();
    let frac = scaled - whole;
    let boundary = frac < 1e-6 || frac > 1.0 - 1e-6;
    let t = whole as i64;
    let sign = if x < 0.0 && t != 0 { "-" } else { "" };
    let text = format!("{sign}{}.{:05}", t / 100_000, t % 100_000);
    Truncated {
        value: (t as f64) / 1e5 * if x < 0.0 { -1.0 } else { 1.0 },
        text,
        boundary,
    }
}

/// Serialize any value as JSON with object keys sorted, floats at 12
/// significant figures, and integers kept integral.  Ends with a newline.
pub fn emit_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Format(e.to_string()))?;
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    Ok(out)
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => {
            let _ = write!(out, "{b}");
        }
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                let _ = write!(out, "{i}");
            } else if let Some(u) = n.as_u64() {
                let _ = write!(out, "{u}");
            } else {
                out.push_str(&format_sig(n.as_f64().unwrap_or(f64::NAN), 12));
            }
        }
        Value::String(s) => {
            let _ = write!(out, "{}", Value::String(s.clone()));
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                push_indent(out, indent + 1);
                write_value(out, item, indent + 1);
            }
            out.push('\n');
            push_indent(out, indent);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push('{');
            // serde_json's map is a BTreeMap, so iteration is already sorted.
            for (i, (k, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                push_indent(out, indent + 1);
                let _ = write!(out, "{}: ", Value::String(k.clone()));
                write_value(out, item, indent + 1);
            }
            out.push('\n');
            push_indent(out, indent);
            out.push('}');
        }
    }
}

fn push_indent(out: &mut String, n: usize) {
    for _ in 0..n {
        out.push_str("  ");
    }
}

/// Quote a CSV field per RFC 4180 (only when needed).
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') || s.contains('\r') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Assemble a full CSV document: header row plus records, CRLF-terminated.
pub fn csv_document(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    let head: Vec<String> = header.iter().map(|h| csv_field(h)).collect();
    out.push_str(&head.join(","));
    out.push_str("\r\n");
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| csv_field(c)).collect();
        out.push_str(&cells.join(","));
        out.push_str("\r\n");
    }
    out
}
