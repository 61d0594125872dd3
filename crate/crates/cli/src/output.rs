//! Tables in text, JSON and CSV. Scalars appear in canonical power-basis
//! form; decimals are for reading only.

use std::io::Write;

use lensinv_core::hopf::Scalar;
use serde_json::{json, Value};

use crate::{Failure, Format};

pub const DIGITS: usize = 20;

pub fn decimal(s: &Scalar) -> String {
    s.to_decimal_string(DIGITS)
}

pub fn scalar_json(s: &Scalar) -> Value {
    s.to_json_value()
}

pub fn print_json(v: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).map_err(|e| Failure::Check(e.to_string()))?;
    println!("{text}");
    Ok(())
}

pub fn print_csv(header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(std::io::stdout());
    let io = |e: csv::Error| Failure::Check(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// Prints a table of strings with columns padded to a common width.
pub fn print_text(header: &[&str], rows: &[Vec<String>]) {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", line(header.to_vec()));
    for r in rows {
        let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
    }
}

/// Emits `rows` in the requested format; `json` builds the JSON form.
pub fn emit(
    format: Format,
    header: &[&str],
    rows: &[Vec<String>],
    json: impl FnOnce() -> Value,
) -> Result<(), Failure> {
    match format {
        Format::Text => {
            print_text(header, rows);
            Ok(())
        }
        Format::Csv => print_csv(header, rows),
        Format::Json => print_json(&json()),
    }
}

pub fn runtime_json(ms: Option<u128>) -> Value {
    ms.map_or(Value::Null, |m| json!(m as u64))
}

pub fn runtime_cell(ms: Option<u128>) -> String {
    ms.map(|m| m.to_string()).unwrap_or_default()
}
