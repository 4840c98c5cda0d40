//! Deterministic serialization: every floating point number is written with
//! 17 significant digits so output round-trips losslessly and identical
//! inputs produce byte-identical files.

use std::io;

use serde_json::ser::Formatter;
use serde_json::Value;

/// `1.2345678901234567e0` style rendering used for CSV, JSON and OBJ.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

struct SciFormatter;

impl Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes a JSON value with scientific float formatting and sorted
/// object keys (the default `Value` map is ordered).
pub fn to_json_string(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    serde::Serialize::serialize(value, &mut ser).expect("in-memory serialization");
    String::from_utf8(out).expect("json is utf-8")
}

/// RFC 4180 CSV: comma separated, `.` decimal point, CRLF line endings.
pub fn csv_table(header: &str, rows: &[Vec<f64>]) -> String {
    let mut s = String::new();
    s.push_str(header);
    s.push_str("\r\n");
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| fmt_f64(*v)).collect();
        s.push_str(&cells.join(","));
        s.push_str("\r\n");
    }
    s
}
