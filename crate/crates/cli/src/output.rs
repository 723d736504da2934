//! Rendering and writing. Every format is byte-deterministic for a fixed
//! run configuration: stable row order, no timestamps, exact integers in
//! decimal.
//!
//! CSV: header row, comma separated, LF line endings; every field is a
//! decimal integer, the slope split into numerator and denominator
//! columns. JSON: a single top-level array; integer values are decimal
//! strings so 53-bit consumers cannot truncate them, and the slope is a
//! {"num","den"} object.

use std::fs::File;
use std::io::Write as _;
use std::path::PathBuf;

use num_bigint::BigInt;
use serde::Serialize;

use hurwitz_slope::report::Report;

use crate::Format;

/// One row of the counts table, fully materialized.
pub struct CountsRow {
    pub d: u64,
    pub sigma1: BigInt,
    pub sigma3: BigInt,
    pub f: BigInt,
    pub m: BigInt,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub delta0: BigInt,
    pub delta1: BigInt,
    pub slope_num: BigInt,
    pub slope_den: BigInt,
}

const COUNTS_HEADER: [&str; 12] = [
    "d",
    "sigma1",
    "sigma3",
    "F",
    "M",
    "A",
    "B",
    "C",
    "delta0",
    "delta1",
    "slope_num",
    "slope_den",
];

impl CountsRow {
    fn cells(&self) -> [String; 12] {
        [
            self.d.to_string(),
            self.sigma1.to_string(),
            self.sigma3.to_string(),
            self.f.to_string(),
            self.m.to_string(),
            self.a.to_string(),
            self.b.to_string(),
            self.c.to_string(),
            self.delta0.to_string(),
            self.delta1.to_string(),
            self.slope_num.to_string(),
            self.slope_den.to_string(),
        ]
    }
}

#[derive(Serialize)]
struct SlopeJson {
    num: String,
    den: String,
}

#[derive(Serialize)]
struct CountsRowJson {
    d: String,
    sigma1: String,
    sigma3: String,
    #[serde(rename = "F")]
    f: String,
    #[serde(rename = "M")]
    m: String,
    #[serde(rename = "A")]
    a: String,
    #[serde(rename = "B")]
    b: String,
    #[serde(rename = "C")]
    c: String,
    delta0: String,
    delta1: String,
    slope: SlopeJson,
}

pub fn render_counts(format: Format, rows: &[CountsRow]) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            out.push_str(&COUNTS_HEADER.join(","));
            out.push('\n');
            for row in rows {
                out.push_str(&row.cells().join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let json_rows: Vec<CountsRowJson> = rows
                .iter()
                .map(|row| {
                    let cells = row.cells();
                    CountsRowJson {
                        d: cells[0].clone(),
                        sigma1: cells[1].clone(),
                        sigma3: cells[2].clone(),
                        f: cells[3].clone(),
                        m: cells[4].clone(),
                        a: cells[5].clone(),
                        b: cells[6].clone(),
                        c: cells[7].clone(),
                        delta0: cells[8].clone(),
                        delta1: cells[9].clone(),
                        slope: SlopeJson {
                            num: cells[10].clone(),
                            den: cells[11].clone(),
                        },
                    }
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&json_rows).expect("rows serialize to JSON");
            out.push('\n');
            out
        }
        Format::Text => {
            let mut widths: Vec<usize> = COUNTS_HEADER.iter().map(|h| h.len()).collect();
            let all_cells: Vec<[String; 12]> = rows.iter().map(|r| r.cells()).collect();
            for cells in &all_cells {
                for (w, cell) in widths.iter_mut().zip(cells.iter()) {
                    *w = (*w).max(cell.len());
                }
            }
            let mut out = String::new();
            let mut line = Vec::new();
            for (h, w) in COUNTS_HEADER.iter().zip(&widths) {
                line.push(format!("{h:>w$}"));
            }
            out.push_str(&line.join("  "));
            out.push('\n');
            for cells in &all_cells {
                line.clear();
                for (cell, w) in cells.iter().zip(&widths) {
                    line.push(format!("{cell:>w$}"));
                }
                out.push_str(&line.join("  "));
                out.push('\n');
            }
            out
        }
    }
}

#[derive(Serialize)]
struct CheckJson {
    check: String,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

pub fn render_report(format: Format, report: &Report) -> String {
    match format {
        Format::Text => format!("{report}\n"),
        Format::Json => {
            let checks: Vec<CheckJson> = report
                .checks
                .iter()
                .map(|c| CheckJson {
                    check: c.name.clone(),
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&checks).expect("checks serialize to JSON");
            out.push('\n');
            out
        }
        Format::Csv => {
            let mut out = String::from("check,passed,detail\n");
            for c in &report.checks {
                // Commas inside details would break the no-quoting CSV
                // contract; swap them for semicolons.
                let detail = c.detail.as_deref().unwrap_or("").replace(',', ";");
                out.push_str(&format!("{},{},{}\n", c.name, c.passed, detail));
            }
            out
        }
    }
}

/// Write to the configured path, or standard output when absent.
pub fn write(out: &Option<PathBuf>, rendered: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            let mut file =
                File::create(path).map_err(|e| format!("cannot create {}: {e}", path.display()))?;
            file.write_all(rendered.as_bytes())
                .map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(rendered.as_bytes())
                .map_err(|e| format!("cannot write to standard output: {e}"))
        }
    }
}
