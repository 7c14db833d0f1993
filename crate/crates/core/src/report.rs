//! Report assembly, ordering, and serialization.
//!
//! A report is the baseline row followed by every frequent subgroup, in the
//! four-column shape (itemsets, support, metric, difference) extended with
//! the exact integer counters (count, numerator, denominator) so downstream
//! tooling can verify every value. Three formats: an aligned `table` for
//! terminals, RFC 4180 `csv`, and `json` as the machine contract.

use std::cmp::Ordering;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::dataset::Schema;
use crate::engine::{Itemset, SubgroupStats};
use crate::error::Error;
use crate::metrics::FairnessMetric;

/// Label of the whole-dataset baseline row.
pub const BASELINE_LABEL: &str = "(All)";

/// Numbers in `table` and `csv` output are printed to this many decimals.
const DISPLAY_DECIMALS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

impl OutputFormat {
    pub fn token(self) -> &'static str {
        match self {
            OutputFormat::Table => "table",
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::UnknownFormat {
                token: s.to_string(),
            }),
        }
    }
}

/// One output row. `items` is `None` for the baseline.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub label: String,
    pub items: Option<Itemset>,
    pub support: f64,
    pub count: u64,
    pub numerator: u64,
    pub denominator: u64,
    pub metric: Option<f64>,
    pub difference: Option<f64>,
}

impl ReportRow {
    pub(crate) fn baseline(stats: &SubgroupStats, n_rows: usize) -> Self {
        ReportRow {
            label: BASELINE_LABEL.to_string(),
            items: None,
            support: stats.support(n_rows),
            count: stats.count,
            numerator: stats.numerator,
            denominator: stats.denominator,
            metric: stats.metric(),
            // The baseline's difference is zero by definition, even when its
            // metric is undefined.
            difference: Some(0.0),
        }
    }

    pub(crate) fn subgroup(
        itemset: &Itemset,
        stats: &SubgroupStats,
        schema: &Schema,
        n_rows: usize,
        baseline_metric: Option<f64>,
    ) -> Self {
        let metric = stats.metric();
        let difference = match (metric, baseline_metric) {
            (Some(m), Some(m0)) => Some(m - m0),
            _ => None,
        };
        ReportRow {
            label: itemset.label(schema),
            items: Some(itemset.clone()),
            support: stats.support(n_rows),
            count: stats.count,
            numerator: stats.numerator,
            denominator: stats.denominator,
            metric,
            difference,
        }
    }

    pub fn is_baseline(&self) -> bool {
        self.items.is_none()
    }
}

/// Echo of the audited dataset and configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSummary {
    pub n_rows: usize,
    pub attribute_names: Vec<String>,
    pub min_support: f64,
    pub max_length: usize,
    pub metric: FairnessMetric,
    pub ignored_attributes: Vec<String>,
}

/// Ordered audit output: the baseline row first, then every frequent
/// subgroup.
#[derive(Debug, Clone)]
pub struct Report {
    pub summary: DatasetSummary,
    pub rows: Vec<ReportRow>,
    schema: Schema,
}

impl Report {
    pub(crate) fn new(schema: Schema, summary: DatasetSummary, rows: Vec<ReportRow>) -> Self {
        Report {
            summary,
            rows: order_rows(rows),
            schema,
        }
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    /// The subgroup rows' exact counters, sorted by itemset. Two audits agree
    /// iff these vectors are equal.
    pub fn subgroup_counts(&self) -> Vec<(Itemset, u64, u64, u64)> {
        let mut out: Vec<_> = self
            .rows
            .iter()
            .filter_map(|r| {
                r.items
                    .clone()
                    .map(|items| (items, r.count, r.numerator, r.denominator))
            })
            .collect();
        out.sort();
        out
    }

    pub fn row_by_label(&self, label: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.label == label)
    }
}

/// Deterministic total order: baseline first, then ascending itemset length;
/// within a length descending support, ties broken by canonical itemset
/// order. Support comparisons use the integer counts, which order
/// identically because every row shares the same denominator.
pub fn order_rows(mut rows: Vec<ReportRow>) -> Vec<ReportRow> {
    rows.sort_by(|a, b| match (&a.items, &b.items) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some(x), Some(y)) => x
            .len()
            .cmp(&y.len())
            .then_with(|| b.count.cmp(&a.count))
            .then_with(|| x.cmp(y)),
    });
    rows
}

/// Serialize an ordered report. Every format ends with a newline.
pub fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => render_table(report),
        OutputFormat::Csv => render_csv(report),
        OutputFormat::Json => render_json(report),
    }
}

fn fmt_fraction(value: f64) -> String {
    format!("{value:.DISPLAY_DECIMALS$}")
}

fn fmt_optional(value: Option<f64>, undefined: &str) -> String {
    value.map_or_else(|| undefined.to_string(), fmt_fraction)
}

const HEADERS: [&str; 7] = [
    "itemsets",
    "support",
    "metric",
    "difference",
    "count",
    "numerator",
    "denominator",
];

fn render_table(report: &Report) -> String {
    let s = &report.summary;
    let mut out = format!(
        "# n_rows={} attributes={} metric={} min_support={} max_length={} ignored={}\n",
        s.n_rows,
        s.attribute_names.join(","),
        s.metric,
        s.min_support,
        s.max_length,
        if s.ignored_attributes.is_empty() {
            "none".to_string()
        } else {
            s.ignored_attributes.join(",")
        },
    );

    let cells: Vec<[String; 7]> = report
        .rows
        .iter()
        .map(|r| {
            [
                r.label.clone(),
                fmt_fraction(r.support),
                fmt_optional(r.metric, "undef"),
                fmt_optional(r.difference, "undef"),
                r.count.to_string(),
                r.numerator.to_string(),
                r.denominator.to_string(),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..HEADERS.len())
        .map(|col| {
            cells
                .iter()
                .map(|row| row[col].len())
                .chain([HEADERS[col].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();

    let mut line = |row: &[String]| {
        for (col, cell) in row.iter().enumerate() {
            if col > 0 {
                out.push_str("  ");
            }
            if col == 0 {
                // Label column is left-aligned, numbers right-aligned.
                let _ = write!(out, "{cell:<width$}", width = widths[0]);
            } else {
                let _ = write!(out, "{cell:>width$}", width = widths[col]);
            }
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    };
    line(&HEADERS.map(String::from));
    for row in &cells {
        line(row);
    }
    out
}

fn csv_quote(field: &str) -> String {
    format!("\"{}\"", field.replace('"', "\"\""))
}

fn render_csv(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&HEADERS.join(","));
    out.push('\n');
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            csv_quote(&r.label),
            fmt_fraction(r.support),
            fmt_optional(r.metric, ""),
            fmt_optional(r.difference, ""),
            r.count,
            r.numerator,
            r.denominator,
        );
    }
    out
}

#[derive(Serialize)]
struct JsonItem<'a> {
    attribute: &'a str,
    value: &'a str,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    itemset: Vec<JsonItem<'a>>,
    support: f64,
    count: u64,
    numerator: u64,
    denominator: u64,
    metric: Option<f64>,
    difference: Option<f64>,
}

fn render_json(report: &Report) -> String {
    let schema = &report.schema;
    let rows: Vec<JsonRow<'_>> = report
        .rows
        .iter()
        .map(|r| JsonRow {
            itemset: r
                .items
                .as_ref()
                .map(|items| {
                    items
                        .items()
                        .iter()
                        .map(|item| {
                            let attr = &schema.attributes[item.attribute as usize];
                            JsonItem {
                                attribute: &attr.name,
                                value: &attr.domain[item.value as usize],
                            }
                        })
                        .collect()
                })
                .unwrap_or_default(),
            support: r.support,
            count: r.count,
            numerator: r.numerator,
            denominator: r.denominator,
            metric: r.metric,
            difference: r.difference,
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&rows).expect("report rows serialize");
    out.push('\n');
    out
}
