//! Machine-readable report schema and the human table renderer. JSON
//! field order is fixed by struct order, exact values travel as decimal
//! strings, floats are rounded to 15 significant digits before they are
//! emitted, and per-case timing stays unset so that repeated runs and
//! different worker counts produce byte-identical output.

use serde::{Serialize, Serializer};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct CaseOut {
    pub family: String,
    pub parameters: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine_value: Option<String>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "float_15_digits"
    )]
    pub formula_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_value: Option<String>,
    pub agreement: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub cases: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub report_version: u32,
    pub command: String,
    pub cases: Vec<CaseOut>,
    pub summary: Summary,
}

/// Rounds to 15 significant digits so emitted floats carry exactly that
/// much precision and reruns agree bit for bit.
pub fn round_15(v: f64) -> f64 {
    if v.is_finite() {
        format!("{v:.14e}").parse().unwrap_or(v)
    } else {
        v
    }
}

fn float_15_digits<S>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error>
where
    S: Serializer,
{
    match v {
        Some(x) => s.serialize_f64(round_15(*x)),
        None => s.serialize_none(),
    }
}

/// Renders the float the way the JSON emitter would, for table output.
pub fn float_string(v: f64) -> String {
    serde_json::to_string(&round_15(v)).unwrap_or_else(|_| "null".into())
}

impl Report {
    pub fn new(command: String, cases: Vec<CaseOut>, total: usize, failures: usize) -> Report {
        Report {
            report_version: REPORT_VERSION,
            command,
            cases,
            summary: Summary {
                cases: total,
                failures,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Fixed-width plain text table: every column as wide as its widest
/// cell, two spaces between columns, no trailing spaces.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let columns = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate().take(columns) {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let mut emit = |cells: &[String]| {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate().take(columns) {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < columns {
                for _ in cell.len()..widths[i] {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    emit(&headers.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    for row in rows {
        emit(row);
    }
    out
}

/// Family label for tables: the classical names for the three grid
/// families, a plain name(parameters) form for everything else.
pub fn case_label(family: &str, parameters: &[i64]) -> String {
    match (family, parameters) {
        ("honeycomb", [m, n]) => format!("H_{{{m},{n}}}"),
        ("square-cylinder", [m, n]) | ("odd-girth", [m, n]) => format!("C_{{{m},{n}}}"),
        ("rect-grid", [m, n]) => format!("R_{{{m},{n}}}"),
        _ => {
            let params: Vec<String> = parameters.iter().map(|p| p.to_string()).collect();
            format!("{family}({})", params.join(","))
        }
    }
}
