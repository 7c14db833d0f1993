//! Timing grid over (min_support, max_length, engine) on one dataset.
//!
//! Cells run strictly sequentially, each with one warm-up run followed by a
//! single timed run. When a grid cell runs both engines their reports are
//! checked for exact agreement.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::engine::{fairpriori, AuditConfig};
use crate::error::{Error, Result};
use crate::oracle::naive_oracle;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineKind {
    /// Level-wise mining with fused metric accumulation.
    Fused,
    /// Exhaustive enumeration with one re-scan per candidate.
    Naive,
}

impl EngineKind {
    pub fn token(self) -> &'static str {
        match self {
            EngineKind::Fused => "fused",
            EngineKind::Naive => "naive",
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for EngineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fused" => Ok(EngineKind::Fused),
            "naive" => Ok(EngineKind::Naive),
            _ => Err(Error::UnknownEngine {
                token: s.to_string(),
            }),
        }
    }
}

/// One timed grid cell.
#[derive(Debug, Clone, Serialize)]
pub struct SweepCell {
    pub min_support: f64,
    pub max_length: usize,
    pub engine: EngineKind,
    pub wall_time_secs: f64,
    pub n_subgroups: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub cells: Vec<SweepCell>,
}

impl SweepResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("min_support,max_length,engine,wall_time_secs,n_subgroups\n");
        for c in &self.cells {
            let _ = writeln!(
                out,
                "{},{},{},{:.6},{}",
                c.min_support, c.max_length, c.engine, c.wall_time_secs, c.n_subgroups
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.cells).expect("cells serialize");
        out.push('\n');
        out
    }
}

fn run_engine(dataset: &Dataset, config: &AuditConfig, engine: EngineKind) -> Result<Report> {
    match engine {
        EngineKind::Fused => fairpriori(dataset, config),
        EngineKind::Naive => naive_oracle(dataset, config),
    }
}

/// Time every (support, length, engine) cell on `dataset`. The audit metric
/// is demographic parity; the metric choice does not change the scan cost.
pub fn run_sweep(
    dataset: &Dataset,
    supports: &[f64],
    lengths: &[usize],
    engines: &[EngineKind],
) -> Result<SweepResult> {
    let mut cells = Vec::new();
    for &min_support in supports {
        for &max_length in lengths {
            let config = AuditConfig {
                min_support,
                max_length,
                ..AuditConfig::default()
            };
            config.validate(dataset.schema())?;

            let mut reports: Vec<(EngineKind, Report)> = Vec::new();
            for &engine in engines {
                run_engine(dataset, &config, engine)?; // warm-up
                let start = Instant::now();
                let report = run_engine(dataset, &config, engine)?;
                let wall_time_secs = start.elapsed().as_secs_f64();
                cells.push(SweepCell {
                    min_support,
                    max_length,
                    engine,
                    wall_time_secs,
                    n_subgroups: report.rows.len() - 1,
                });
                reports.push((engine, report));
            }
            for pair in reports.windows(2) {
                if pair[0].1.subgroup_counts() != pair[1].1.subgroup_counts() {
                    return Err(Error::EngineMismatch {
                        min_support,
                        max_length,
                    });
                }
            }
        }
    }
    Ok(SweepResult { cells })
}
