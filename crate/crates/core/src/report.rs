//! Result tables in CSV (12 significant digits) or JSON (full precision).

use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::adjustments::AdjustedValue;
use crate::error::{Error, Result};

pub const CSV_COLUMNS: [&str; 12] = [
    "label",
    "metric",
    "n",
    "value",
    "expectation",
    "variance",
    "null_method",
    "adjusted_index",
    "z",
    "phi_z",
    "expectation_adjusted",
    "lower_bound",
];

pub const CSV_SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

/// One (input label, metric) row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub label: String,
    pub metric: String,
    pub n: usize,
    pub value: f64,
    pub expectation: Option<f64>,
    pub variance: Option<f64>,
    pub null_method: Option<String>,
    pub adjusted_index: Option<f64>,
    /// Oriented so that larger is better.
    pub z: Option<f64>,
    pub phi_z: Option<f64>,
    pub expectation_adjusted: Option<f64>,
    pub lower_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_raw: Option<f64>,
    #[serde(default)]
    pub orientation_flipped: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ResultRow {
    pub fn from_adjusted(label: impl Into<String>, adjusted: &AdjustedValue) -> Self {
        ResultRow {
            label: label.into(),
            metric: adjusted.base.metric.name().to_string(),
            n: adjusted.base.n,
            value: adjusted.base.value,
            expectation: Some(adjusted.null.expectation),
            variance: Some(adjusted.null.variance),
            null_method: Some(adjusted.null.method.as_str().to_string()),
            adjusted_index: adjusted.adjusted_index,
            z: adjusted.z_score,
            phi_z: adjusted.phi_of_z,
            expectation_adjusted: adjusted.expectation_adjusted,
            lower_bound: adjusted.lower_bound,
            z_raw: adjusted.z_raw,
            orientation_flipped: adjusted.orientation_flipped,
            error: None,
        }
    }

    /// A row whose null statistics could not be computed.
    pub fn base_only(
        label: impl Into<String>,
        metric: &str,
        n: usize,
        value: f64,
        error: &Error,
    ) -> Self {
        ResultRow {
            label: label.into(),
            metric: metric.to_string(),
            n,
            value,
            expectation: None,
            variance: None,
            null_method: None,
            adjusted_index: None,
            z: None,
            phi_z: None,
            expectation_adjusted: None,
            lower_bound: None,
            z_raw: None,
            orientation_flipped: false,
            error: Some(error.to_string()),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub rows: Vec<ResultRow>,
}

/// Formats like C's `%.{digits}g`.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        format!(
            "{mantissa}e{}{:02}",
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl ResultTable {
    pub fn push(&mut self, row: ResultRow) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let num = |v: Option<f64>| {
            v.map(|x| format_significant(x, CSV_SIGNIFICANT_DIGITS))
                .unwrap_or_default()
        };
        let mut out = CSV_COLUMNS.join(",");
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                csv_field(&r.label),
                csv_field(&r.metric),
                r.n,
                num(Some(r.value)),
                num(r.expectation),
                num(r.variance),
                r.null_method.as_deref().unwrap_or(""),
                num(r.adjusted_index),
                num(r.z),
                num(r.phi_z),
                num(r.expectation_adjusted),
                num(r.lower_bound),
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("rows serialize")
    }

    pub fn write<W: Write>(&self, mut out: W, format: OutputFormat) -> Result<()> {
        let text = match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json() + "\n",
        };
        out.write_all(text.as_bytes())
            .map_err(|e| Error::storage("writing result table", e))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rows = serde_json::from_str(text).map_err(|e| Error::Parse {
            source_name: "result table".into(),
            line: e.line(),
            message: e.to_string(),
        })?;
        Ok(ResultTable { rows })
    }

    /// Parses the CSV produced by [`ResultTable::to_csv`]. Labels containing
    /// commas are not supported here.
    pub fn from_csv(text: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse {
            source_name: "result table".into(),
            line,
            message,
        };
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, header)) if header == CSV_COLUMNS.join(",") => {}
            _ => return Err(err(1, "unexpected header".into())),
        }
        let mut table = ResultTable::default();
        for (i, line) in lines {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != CSV_COLUMNS.len() {
                return Err(err(i + 1, format!("expected {} fields", CSV_COLUMNS.len())));
            }
            let opt = |s: &str| -> Result<Option<f64>> {
                if s.is_empty() {
                    Ok(None)
                } else {
                    s.parse().map(Some).map_err(|e| err(i + 1, format!("{e}")))
                }
            };
            table.push(ResultRow {
                label: f[0].to_string(),
                metric: f[1].to_string(),
                n: f[2].parse().map_err(|e| err(i + 1, format!("{e}")))?,
                value: opt(f[3])?.ok_or_else(|| err(i + 1, "missing value".into()))?,
                expectation: opt(f[4])?,
                variance: opt(f[5])?,
                null_method: (!f[6].is_empty()).then(|| f[6].to_string()),
                adjusted_index: opt(f[7])?,
                z: opt(f[8])?,
                phi_z: opt(f[9])?,
                expectation_adjusted: opt(f[10])?,
                lower_bound: opt(f[11])?,
                z_raw: None,
                orientation_flipped: false,
                error: None,
            });
        }
        Ok(table)
    }
}
