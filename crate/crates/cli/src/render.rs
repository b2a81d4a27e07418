//! Text renderings: CSV, aligned ASCII, plain PGM and JSON.

use std::fmt::Write as _;

use gridlabel::verifier::VerificationVerdict;
use gridlabel::{Scheme, Vertex};
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct ViolationJson {
    pub offset: [i64; 2],
    pub distance: u64,
    pub required_gap: u64,
    pub actual: i64,
    pub pair: Option<[[i64; 2]; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckJson {
    pub check: &'static str,
    /// `x0,y0,width,height` for window checks.
    pub window: Option<String>,
    pub passed: bool,
    pub checked_pairs: u64,
    pub violation_count: u64,
    pub violations: Vec<ViolationJson>,
}

impl CheckJson {
    pub fn from_verdict(
        check: &'static str,
        window: Option<String>,
        v: &VerificationVerdict<i64>,
    ) -> Self {
        let xy = |v: Vertex| [v.x, v.y];
        CheckJson {
            check,
            window,
            passed: v.passed,
            checked_pairs: v.checked_pairs,
            violation_count: v.violation_count,
            violations: v
                .violations
                .iter()
                .map(|r| ViolationJson {
                    offset: xy(r.offset),
                    distance: r.distance,
                    required_gap: r.required_gap,
                    actual: r.actual,
                    pair: r.pair.map(|(u, w)| [xy(u), xy(w)]),
                })
                .collect(),
        }
    }
}

pub fn json_scheme(s: &Scheme) -> serde_json::Value {
    serde_json::json!({
        "a": s.a(),
        "b": s.b(),
        "c": s.c(),
        "p": s.p(),
        "case": s.kind().name(),
    })
}

pub fn to_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

/// `x,y,label` with one line per cell, `y` ascending then `x` ascending.
/// `rows[i]` holds `y = y0 + i`.
pub fn grid_csv(x0: i64, y0: i64, rows: &[Vec<i64>]) -> String {
    let mut s = String::from("x,y,label\n");
    for (dy, row) in rows.iter().enumerate() {
        for (dx, label) in row.iter().enumerate() {
            let _ = writeln!(s, "{},{},{}", x0 + dx as i64, y0 + dy as i64, label);
        }
    }
    s
}

/// Right-aligned columns, largest `y` on top.
pub fn grid_ascii(rows: &[Vec<i64>], max_label: i64) -> String {
    let width = max_label.max(0).to_string().len();
    let mut s = String::new();
    for row in rows.iter().rev() {
        let cells: Vec<String> = row.iter().map(|l| format!("{l:>width$}")).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

/// Plain P2 image with one gray level per label, largest `y` on top.
pub fn grid_pgm(rows: &[Vec<i64>], max_label: i64) -> String {
    let width = rows.first().map_or(0, Vec::len);
    let mut s = format!("P2\n{} {}\n{}\n", width, rows.len(), max_label.max(1));
    for row in rows.iter().rev() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

pub fn table_ascii<const N: usize>(header: &[&str; N], rows: &[[String; N]]) -> String {
    let mut widths = header.map(str::len);
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(header.to_vec());
    for row in rows {
        s.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    s
}

/// Reads `x,y,label` CSV as produced by `label --format csv`.
pub fn parse_label_csv(input: &str) -> Result<Vec<(Vertex, i64)>, CliError> {
    let mut reader = csv::Reader::from_reader(input.as_bytes());
    let headers = reader.headers().map_err(|e| CliError::Csv(e.to_string()))?;
    if headers != vec!["x", "y", "label"] {
        return Err(CliError::Csv(format!("unexpected header {headers:?}")));
    }
    reader
        .records()
        .map(|record| {
            let record = record.map_err(|e| CliError::Csv(e.to_string()))?;
            let field = |i: usize| -> Result<i64, CliError> {
                record[i]
                    .parse()
                    .map_err(|e| CliError::Csv(format!("{:?}: {e}", &record[i])))
            };
            Ok((Vertex::new(field(0)?, field(1)?), field(2)?))
        })
        .collect()
}
