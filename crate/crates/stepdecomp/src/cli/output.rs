//! Serialization for the command-line front end.
//!
//! Every floating-point number is printed with 17 significant digits
//! (`{:.16e}`), enough for any binary double to survive a decimal round
//! trip bit for bit. Identical runs therefore produce byte-identical
//! documents.

use serde::{Deserialize, Serialize};
use std::io;

/// 17-significant-digit decimal form of `x`; parses back to the same bits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

struct Fmt17;

impl serde_json::ser::Formatter for Fmt17 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }
}

/// Serializes to single-line JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Fmt17);
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON output is UTF-8")
}

/// Document emitted by `decompose`.
#[derive(Debug, Serialize, Deserialize)]
pub struct DecomposeDoc {
    pub schema_version: String,
    pub expression: String,
    pub n_vars: usize,
    pub point: Vec<f64>,
    pub anchor: f64,
    pub terms: Vec<TermDoc>,
    pub reconstruction: f64,
    pub direct_value: f64,
    pub abs_error: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TermDoc {
    pub subset: Vec<usize>,
    pub value: f64,
    pub error_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_oracle_gap: Option<f64>,
}

/// Document emitted by `verify --format json`.
#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub schema_version: String,
    pub expression: String,
    pub n_vars: usize,
    pub grid: Vec<GridAxisDoc>,
    pub points: usize,
    pub max_abs_error: f64,
    pub max_rel_error: f64,
    pub worst_point: Vec<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GridAxisDoc {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

/// One `smooth` CSV row.
pub struct SmoothRow {
    pub k: f64,
    pub subset: String,
    pub smooth_value: f64,
    pub exact_value: f64,
    pub abs_error: f64,
}

/// Renders the steepness-sweep table. The subset column is always quoted
/// because the canonical rendering contains commas.
pub fn smooth_csv(rows: &[SmoothRow]) -> String {
    let mut out = String::from("k,term_subset,smooth_value,exact_value,abs_error\n");
    for row in rows {
        out.push_str(&format!(
            "{},\"{}\",{},{},{}\n",
            row.k,
            row.subset,
            fmt17(row.smooth_value),
            fmt17(row.exact_value),
            fmt17(row.abs_error),
        ));
    }
    out
}
